//! Brute-force membership tests, evaluated directly from the defining conditions.

use crate::model::ModelError;

const L1_ALPHABET: &str = "ab012345";
const L2_ALPHABET: &str = "ab012345cde";

fn check_alphabet(w: &str, alphabet: &str) -> Result<(), ModelError> {
    match w.chars().find(|c| !alphabet.contains(*c)) {
        Some(c) => Err(ModelError::Alphabet(c.to_string())),
        None => Ok(()),
    }
}

fn count(w: &str, ch: char) -> usize {
    w.chars().filter(|&c| c == ch).count()
}

/// Erases every symbol of `w` that is not in `keep`.
pub fn homomorphism(w: &str, keep: &str) -> String {
    w.chars().filter(|c| keep.contains(*c)).collect()
}

/// `|w|_a ≠ |w|_b` and `|w|_c` equals one of them.
pub fn in_l3(w: &str) -> Result<bool, ModelError> {
    check_alphabet(w, "abc")?;
    let (a, b, c) = (count(w, 'a'), count(w, 'b'), count(w, 'c'));
    Ok(a != b && (a == c || b == c))
}

/// `|w|_a = |w|_b ≠ |w|_c`.
pub fn in_l4(w: &str) -> Result<bool, ModelError> {
    check_alphabet(w, "abc")?;
    let (a, b, c) = (count(w, 'a'), count(w, 'b'), count(w, 'c'));
    Ok(a == b && a != c)
}

/// `|w|_a = |w|_b` over `{a, b}`; foreign symbols make `w` a nonmember.
pub fn in_leq(w: &str) -> bool {
    check_alphabet(w, "ab").is_ok() && count(w, 'a') == count(w, 'b')
}

/// `a^x b a^y1 b … a^yt b` with all exponents positive and some prefix sum of the `y`s equal to `x`.
pub fn in_lnh(w: &str) -> bool {
    if check_alphabet(w, "ab").is_err() || !w.ends_with('b') {
        return false;
    }
    let runs: Vec<usize> = w[..w.len() - 1].split('b').map(str::len).collect();
    if runs.len() < 2 || runs.contains(&0) {
        return false;
    }
    let x = runs[0];
    let mut prefix = 0;
    runs[1..].iter().any(|&y| {
        prefix += y;
        prefix == x
    })
}

/// Which of the component languages `L_{a,i}` and `L_{b,j}` contain a word.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct L1Detail {
    /// `i ∈ {1, 2, 3}`.
    pub a_class: u8,
    /// `j ∈ {1, 2, 3}`.
    pub b_class: u8,
}

impl L1Detail {
    pub fn member(&self) -> bool {
        matches!((self.a_class, self.b_class), (1, 2) | (2, 1))
    }
}

/// Class 1 or 2 of `xmy` with `x` over `{lo, hi}` and `y` over `{pad}` (see `in_l1`), else 3.
fn component_class(projected: &str, marker: char, lo: char, hi: char, pad: char) -> u8 {
    if count(projected, marker) != 1 {
        return 3;
    }
    let (x, y) = projected.split_once(marker).expect("one marker");
    if x.contains(pad) || y.chars().any(|c| c != pad) {
        return 3;
    }
    let (n_lo, n_hi, n_pad) = (count(x, lo), count(x, hi), y.len());
    if n_lo == n_hi {
        1
    } else if n_pad > 0 && n_lo == n_hi + n_pad {
        2
    } else {
        3
    }
}

/// Classifies `w` over `{a, b, 0, …, 5}`. The `a` side projects onto `{a, 0, 1, 2}` and
/// must read `x a y` with `x ∈ {0,1}*`, `y ∈ 2*`; class 1 needs `#0 = #1`, class 2 needs
/// `y` nonempty and `#0 = #1 + |y|`. The `b` side is the same over `{b, 3, 4, 5}`.
pub fn in_l1(w: &str) -> Result<L1Detail, ModelError> {
    check_alphabet(w, L1_ALPHABET)?;
    Ok(L1Detail {
        a_class: component_class(&homomorphism(w, "a012"), 'a', '0', '1', '2'),
        b_class: component_class(&homomorphism(w, "b345"), 'b', '3', '4', '5'),
    })
}

/// Words `w1 c u1 … wn c un` with `n ≥ 1`, each `wi ∈ L1`, and `ui` equal to `d` when
/// `wi ∈ L_{a,1} ∩ L_{b,2}` and `e` when `wi ∈ L_{a,2} ∩ L_{b,1}`.
pub fn in_l2(w: &str) -> Result<bool, ModelError> {
    check_alphabet(w, L2_ALPHABET)?;
    let mut chars = w.chars();
    let mut segment = String::new();
    let mut blocks = 0;
    while let Some(ch) = chars.next() {
        match ch {
            'c' => {
                let detail = in_l1(&segment)?;
                let wanted = match (detail.a_class, detail.b_class) {
                    (1, 2) => 'd',
                    (2, 1) => 'e',
                    _ => return Ok(false),
                };
                if chars.next() != Some(wanted) {
                    return Ok(false);
                }
                segment.clear();
                blocks += 1;
            }
            'd' | 'e' => return Ok(false),
            _ => segment.push(ch),
        }
    }
    Ok(blocks > 0 && segment.is_empty())
}

/// A named membership predicate together with the alphabet it is defined over.
#[derive(Debug, Clone, Copy)]
pub struct LanguageOracle {
    pub name: &'static str,
    /// Empty for the trivial oracles, which accept any alphabet.
    pub alphabet: &'static str,
    membership: Membership,
}

impl LanguageOracle {
    pub fn contains(&self, w: &str) -> Result<bool, ModelError> {
        (self.membership)(w)
    }
}

pub const ORACLE_NAMES: [&str; 8] = ["l1", "l2", "l3", "l4", "leq", "lnh", "all", "none"];

type Membership = fn(&str) -> Result<bool, ModelError>;

pub fn oracle_by_name(name: &str) -> Option<LanguageOracle> {
    let (alphabet, membership): (&'static str, Membership) = match name {
        "l1" => (L1_ALPHABET, |w| in_l1(w).map(|d| d.member())),
        "l2" => (L2_ALPHABET, in_l2),
        "l3" => ("abc", in_l3),
        "l4" => ("abc", in_l4),
        "leq" => ("ab", |w| Ok(in_leq(w))),
        "lnh" => ("ab", |w| Ok(in_lnh(w))),
        "all" => ("", |_| Ok(true)),
        "none" => ("", |_| Ok(false)),
        _ => return None,
    };
    let name = ORACLE_NAMES.iter().find(|n| **n == name).expect("listed name");
    Some(LanguageOracle { name, alphabet, membership })
}

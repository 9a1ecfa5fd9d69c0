//! Line-oriented text format for machine descriptions.
//!
//! ```text
//! kind kq1ca
//! counter blind
//! states q1 p1
//! input a b c
//! register wn wa wr
//! init-register wn
//! accept wa
//! reject wr
//! trans q1 a any -> q1 +1 wn : 1
//! trans q1 DOLLAR any -> p1 0 wa : 1/sqrt(2)
//! ```
//!
//! One-way machines put `stay` or `right` before the register symbol, `dc` lines give
//! the increment function of simple machines, and `auto-complete unitary` fills in
//! every transition column left unspecified. Identifiers must be declared before use.

use std::fmt::Write as _;

use thiserror::Error;

use crate::model::{
    format_amplitude, parse_amplitude, CounterMode, CounterSign, HeadMove, Increment, Machine, MachineBuilder,
    MachineKind, ModelError, SignSpec, Symbol, Target,
};
use crate::validate::{complete_machine, CompletionError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LoadError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("unitary completion failed: {0}")]
    Completion(#[from] CompletionError),
}

struct Token<'a> {
    column: usize,
    text: &'a str,
}

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices().chain(std::iter::once((line.len(), ' '))) {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push(Token { column: line[..s].chars().count() + 1, text: &line[s..i] });
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    out
}

struct LineParser<'a> {
    line: usize,
    tokens: Vec<Token<'a>>,
    /// Column just past the end of the line, used when a token is missing.
    end: usize,
}

impl<'a> LineParser<'a> {
    fn err(&self, column: usize, message: impl Into<String>) -> ParseError {
        ParseError { line: self.line, column, message: message.into() }
    }

    fn at(&self, i: usize, what: &str) -> Result<&Token<'a>, ParseError> {
        self.tokens.get(i).ok_or_else(|| self.err(self.end, format!("expected {what}")))
    }

    fn exact(&self, n: usize) -> Result<(), ParseError> {
        match self.tokens.get(n) {
            Some(t) => Err(self.err(t.column, format!("unexpected `{}`", t.text))),
            None => Ok(()),
        }
    }

    fn model(&self, i: usize, r: Result<impl Sized, ModelError>) -> Result<(), ParseError> {
        let column = self.tokens.get(i).map_or(self.end, |t| t.column);
        r.map(|_| ()).map_err(|e| self.err(column, e.to_string()))
    }

    fn ids(&self) -> Vec<&'a str> {
        self.tokens[1..].iter().map(|t| t.text).collect()
    }
}

fn parse_increment(text: &str) -> Option<Increment> {
    match text {
        "-1" | "−1" => Some(Increment::Dec),
        "0" | "+0" | "-0" => Some(Increment::Keep),
        "+1" | "1" => Some(Increment::Inc),
        _ => None,
    }
}

fn parse_sign(text: &str) -> Option<SignSpec> {
    match text {
        "zero" => Some(SignSpec::One(CounterSign::Zero)),
        "plus" => Some(SignSpec::One(CounterSign::Plus)),
        "minus" => Some(SignSpec::One(CounterSign::Minus)),
        "any" => Some(SignSpec::Any),
        _ => None,
    }
}

/// Parses a machine file. Unspecified columns are left empty unless the file asks for
/// unitary completion.
pub fn parse_machine(text: &str) -> Result<Machine, LoadError> {
    let (machine, complete) = parse_raw(text)?;
    Ok(if complete { complete_machine(&machine)? } else { machine })
}

/// Parses without completing; also reports whether `auto-complete unitary` was present.
pub fn parse_raw(text: &str) -> Result<(Machine, bool), ParseError> {
    let mut builder: Option<MachineBuilder> = None;
    let mut complete = false;
    let mut last_line = 0;
    for (index, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        let line = index + 1;
        last_line = line;
        let (left, amplitude) = match content.split_once(':') {
            Some((l, r)) => (l, Some((l.chars().count() + 2, r))),
            None => (content, None),
        };
        let p = LineParser { line, tokens: tokenize(left), end: left.trim_end().chars().count() + 1 };
        let Some(keyword) = p.tokens.first() else {
            if amplitude.is_some() {
                return Err(p.err(1, "stray `:`"));
            }
            continue;
        };
        if keyword.text != "trans" && amplitude.is_some() {
            return Err(p.err(left.chars().count() + 1, "`:` is only used on trans lines"));
        }

        if keyword.text == "kind" {
            if builder.is_some() {
                return Err(p.err(keyword.column, "duplicate `kind` line"));
            }
            let t = p.at(1, "a machine kind")?;
            let kind = MachineKind::from_name(t.text)
                .ok_or_else(|| p.err(t.column, format!("unknown kind `{}`", t.text)))?;
            p.exact(2)?;
            builder = Some(MachineBuilder::new(kind));
            continue;
        }
        let b = builder.as_mut().ok_or_else(|| p.err(keyword.column, "the first line must be `kind`"))?;
        match keyword.text {
            "counter" => {
                let t = p.at(1, "`blind` or `checked`")?;
                let mode = match t.text {
                    "blind" => CounterMode::Blind,
                    "checked" => CounterMode::Checked,
                    other => return Err(p.err(t.column, format!("unknown counter mode `{other}`"))),
                };
                p.exact(2)?;
                b.counter_mode(mode);
            }
            "simple" => {
                let t = p.at(1, "`true` or `false`")?;
                let simple = t.text.parse::<bool>().map_err(|_| p.err(t.column, "expected `true` or `false`"))?;
                p.exact(2)?;
                b.simple(simple);
            }
            "states" => p.model(1, b.states(&p.ids()))?,
            "input" => p.model(1, b.input(&p.ids()))?,
            "register" => p.model(1, b.registers(&p.ids()))?,
            "init-register" => {
                let t = p.at(1, "a register symbol")?;
                p.exact(2)?;
                p.model(1, b.initial_register(t.text))?;
            }
            "accept" => p.model(1, b.accept(&p.ids()))?,
            "reject" => p.model(1, b.reject(&p.ids()))?,
            "auto-complete" => {
                let t = p.at(1, "`unitary`")?;
                if t.text != "unitary" {
                    return Err(p.err(t.column, "only `auto-complete unitary` is supported"));
                }
                p.exact(2)?;
                complete = true;
            }
            "dc" => {
                let q = p.at(1, "a state")?;
                let state = b.state(q.text).map_err(|e| p.err(q.column, e.to_string()))?;
                let s = p.at(2, "a tape symbol or `*`")?;
                let sym = match s.text {
                    "*" => None,
                    name => Some(b.symbol(name).map_err(|e| p.err(s.column, e.to_string()))?),
                };
                let c = p.at(3, "an increment")?;
                let inc = parse_increment(c.text).ok_or_else(|| p.err(c.column, "increment must be -1, 0 or +1"))?;
                p.exact(4)?;
                b.dc(state, sym, inc);
            }
            "trans" => {
                let (q, sym, signs, target) = parse_transition(&p, b, amplitude)?;
                p.model(0, b.transition(q, sym, signs, target))?;
            }
            other => return Err(p.err(keyword.column, format!("unknown directive `{other}`"))),
        }
    }
    let b = builder.ok_or(ParseError { line: last_line.max(1), column: 1, message: "missing `kind` line".into() })?;
    let machine = b.build().map_err(|e| ParseError { line: last_line.max(1), column: 1, message: e.to_string() })?;
    Ok((machine, complete))
}

fn parse_transition(
    p: &LineParser<'_>,
    b: &MachineBuilder,
    amplitude: Option<(usize, &str)>,
) -> Result<(usize, Symbol, SignSpec, Target), ParseError> {
    let lookup = |i: usize, what: &str, f: &dyn Fn(&str) -> Result<usize, ModelError>| {
        let t = p.at(i, what)?;
        f(t.text).map_err(|e| p.err(t.column, e.to_string()))
    };
    let q = lookup(1, "a source state", &|s| b.state(s))?;
    let sym = lookup(2, "a tape symbol", &|s| b.symbol(s).map(|x| x.0))?;
    let sign_token = p.at(3, "a counter sign")?;
    let signs = parse_sign(sign_token.text)
        .ok_or_else(|| p.err(sign_token.column, "sign must be zero, plus, minus or any"))?;
    let arrow = p.at(4, "`->`")?;
    if arrow.text != "->" {
        return Err(p.err(arrow.column, "expected `->`"));
    }
    let to = lookup(5, "a target state", &|s| b.state(s))?;
    let c = p.at(6, "an increment")?;
    let inc = parse_increment(c.text).ok_or_else(|| p.err(c.column, "increment must be -1, 0 or +1"))?;

    let mut next = 7;
    let head = if b.kind() == MachineKind::OneWay {
        let d = p.at(next, "`stay` or `right`")?;
        next += 1;
        Some(match d.text {
            "stay" => HeadMove::Stay,
            "right" => HeadMove::Right,
            _ => return Err(p.err(d.column, "head move must be `stay` or `right`")),
        })
    } else {
        None
    };
    let register = if b.kind().is_quantum() {
        let r = lookup(next, "a register symbol", &|s| b.register(s))?;
        next += 1;
        Some(r)
    } else {
        None
    };
    p.exact(next)?;

    let (offset, text) = amplitude.ok_or_else(|| p.err(p.end, "expected `: <amplitude>`"))?;
    let amp = parse_amplitude(text).map_err(|e| p.err(offset + e.position, e.message))?;
    if b.kind() == MachineKind::Rtp1ca && (amp.im != 0.0 || amp.re < 0.0) {
        return Err(p.err(offset, "probabilities must be nonnegative reals"));
    }
    Ok((q, Symbol(sym), signs, Target { to, inc, head, register, amp }))
}

fn tape_symbol_token(m: &Machine, s: Symbol) -> &str {
    if s == m.dollar() {
        "DOLLAR"
    } else if s.0 == 0 {
        "CENT"
    } else {
        m.symbol_name(s)
    }
}

/// Renders `m` so that [`parse_machine`] gives it back. Columns identical for all three
/// counter signs are written once with `any`.
pub fn serialize_machine(m: &Machine) -> String {
    let mut out = String::new();
    let mut line = |s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    line(format!("kind {}", m.kind().name()));
    line(format!("counter {}", if m.is_blind() { "blind" } else { "checked" }));
    line(format!("simple {}", m.is_simple()));
    line(format!("states {}", m.states().join(" ")));
    line(format!("input {}", m.input_alphabet().join(" ")).trim_end().to_string());
    let names = |ids: &std::collections::BTreeSet<usize>, pool: &[String]| {
        ids.iter().map(|&i| pool[i].as_str()).collect::<Vec<_>>().join(" ")
    };
    if m.kind().is_quantum() {
        line(format!("register {}", m.registers().join(" ")));
        line(format!("init-register {}", m.registers()[m.initial_register().expect("quantum machine")]));
        line(format!("accept {}", names(m.accepting(), m.registers())).trim_end().to_string());
        line(format!("reject {}", names(m.rejecting(), m.registers())).trim_end().to_string());
    } else {
        line(format!("accept {}", names(m.accepting(), m.states())).trim_end().to_string());
    }
    if m.is_simple() {
        for q in 0..m.num_states() {
            let incs: Vec<Increment> = m.tape_symbols().map(|s| m.dc(q, s).expect("simple machine")).collect();
            if incs.iter().all(|&c| c == incs[0]) {
                line(format!("dc {} * {}", m.states()[q], incs[0]));
            } else {
                for (s, c) in m.tape_symbols().zip(incs) {
                    line(format!("dc {} {} {c}", m.states()[q], tape_symbol_token(m, s)));
                }
            }
        }
    }
    for q in 0..m.num_states() {
        for s in m.tape_symbols() {
            let lists = CounterSign::ALL.map(|sign| m.targets(q, s, sign));
            let signs: Vec<(&str, &[Target])> = if lists[1] == lists[0] && lists[2] == lists[0] {
                vec![("any", lists[0])]
            } else {
                CounterSign::ALL.iter().map(|sign| (sign.name(), lists[sign.index()])).collect()
            };
            for (sign, targets) in signs {
                for t in targets {
                    let mut text =
                        format!("trans {} {} {sign} -> {} {}", m.states()[q], tape_symbol_token(m, s), m.states()[t.to], t.inc);
                    if let Some(d) = t.head {
                        write!(text, " {}", d.name()).expect("write to string");
                    }
                    if let Some(r) = t.register {
                        write!(text, " {}", m.registers()[r]).expect("write to string");
                    }
                    write!(text, " : {}", format_amplitude(t.amp)).expect("write to string");
                    line(text);
                }
            }
        }
    }
    out
}

#![allow(dead_code)]

use num_complex::Complex64;
use q1ca::model::{
    CounterMode, CounterSign, HeadMove, Increment, Machine, MachineBuilder, MachineKind, SignSpec, Symbol, Target,
};
use rand::Rng;

/// `cols` random orthonormal columns of length `dim`.
pub fn random_isometry<R: Rng>(rng: &mut R, dim: usize, cols: usize) -> Vec<Vec<Complex64>> {
    assert!(cols <= dim);
    let mut basis: Vec<Vec<Complex64>> = Vec::new();
    while basis.len() < cols {
        let mut v: Vec<Complex64> =
            (0..dim).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
        for _ in 0..2 {
            for b in &basis {
                let proj: Complex64 = b.iter().zip(&v).map(|(x, y)| x.conj() * y).sum();
                for (x, y) in v.iter_mut().zip(b) {
                    *x -= proj * y;
                }
            }
        }
        let norm = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-3 {
            basis.push(v.into_iter().map(|x| x / norm).collect());
        }
    }
    basis
}

pub struct Shape {
    pub kind: MachineKind,
    pub states: usize,
    pub symbols: usize,
    pub blind: bool,
    pub simple: bool,
}

/// Random well-formed quantum machine.
///
/// Each target state is entered with a single increment per tape symbol (and, for
/// one-way machines, a single head direction), so orthonormal columns per `(σ, θ)`
/// block make the machine well-formed under every formulation.
pub fn random_quantum<R: Rng>(rng: &mut R, shape: &Shape) -> Machine {
    let n = shape.states;
    let states: Vec<String> = (1..=n).map(|i| format!("s{i}")).collect();
    let input: Vec<String> = (0..shape.symbols).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
    let mut b = MachineBuilder::new(shape.kind);
    b.counter_mode(if shape.blind { CounterMode::Blind } else { CounterMode::Checked });
    b.simple(shape.simple);
    b.states(&states).unwrap().input(&input).unwrap();
    let registers = match shape.kind {
        MachineKind::Rtq1ca => vec!["r1", "r2"],
        _ => vec!["n", "a", "r"],
    };
    b.registers(&registers).unwrap().initial_register(registers[0]).unwrap();
    b.accept(&[registers[1]]).unwrap();
    if registers.len() == 3 {
        b.reject(&["r"]).unwrap();
    }

    let one_way = shape.kind == MachineKind::OneWay;
    let stay_states = n.div_ceil(registers.len()).max(1);
    let direction: Vec<HeadMove> = (0..n)
        .map(|q| if q < stay_states || rng.gen_bool(0.5) { HeadMove::Stay } else { HeadMove::Right })
        .collect();
    let tape = shape.symbols + 2;
    let increments: Vec<Vec<Increment>> =
        (0..n).map(|_| (0..tape).map(|_| Increment::ALL[rng.gen_range(0..3)]).collect()).collect();
    if shape.simple {
        for (q, incs) in increments.iter().enumerate() {
            for (s, &c) in incs.iter().enumerate() {
                b.dc(q, Some(Symbol(s)), c);
            }
        }
    }

    #[allow(clippy::needless_range_loop)]
    for s in 0..tape {
        let dollar = s + 1 == tape;
        // on `$` a one-way machine may only enter states that keep the head still
        let targets: Vec<usize> = (0..n).filter(|&q| !(one_way && dollar && direction[q] == HeadMove::Right)).collect();
        let rows: Vec<(usize, usize)> =
            (0..registers.len()).flat_map(|w| targets.iter().map(move |&q| (w, q))).collect();
        let sign_groups: Vec<SignSpec> = if shape.blind {
            vec![SignSpec::Any]
        } else {
            CounterSign::ALL.iter().map(|&t| SignSpec::One(t)).collect()
        };
        for signs in sign_groups {
            let columns = random_isometry(rng, rows.len(), n);
            for (q, column) in columns.iter().enumerate() {
                for (&(w, to), &amp) in rows.iter().zip(column) {
                    let t = Target {
                        to,
                        inc: increments[to][s],
                        head: one_way.then_some(direction[to]),
                        register: Some(w),
                        amp,
                    };
                    b.transition(q, Symbol(s), signs, t).unwrap();
                }
            }
        }
    }
    b.build().unwrap()
}

/// Every word over `alphabet` of length at most `max_len`.
pub fn words(alphabet: &[&str], max_len: usize) -> Vec<String> {
    let owned: Vec<String> = alphabet.iter().map(|s| s.to_string()).collect();
    q1ca::zoo::enumerate_words(&owned, max_len)
}

pub fn random_word<R: Rng>(rng: &mut R, alphabet: &[char], max_len: usize) -> String {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| alphabet[rng.gen_range(0..alphabet.len())]).collect()
}

/// Copies of `m` with one nonzero amplitude raised by 0.1, in transition order.
pub fn single_mutations(m: &Machine) -> Vec<Machine> {
    let mut out = Vec::new();
    for (q, s, sign, targets) in m.columns() {
        for (i, t) in targets.iter().enumerate() {
            if t.amp.norm() > 0.0 {
                let mut mutated = m.clone();
                mutated.targets_mut(q, s, sign)[i].amp += 0.1;
                out.push(mutated);
            }
        }
    }
    out
}

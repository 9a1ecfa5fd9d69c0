//! Well-formedness conditions for every machine kind.
//!
//! Each checker evaluates the local conditions as scalar equations and records
//! every equation that misses its target by more than [`TOLERANCE`].

mod complete;

use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

use crate::model::{CounterMode, CounterSign, HeadMove, Increment, Machine, MachineKind, Symbol, Target};
use crate::numfmt::sig12;

pub use complete::{complete_machine, complete_unitary, CompletionError};

/// Absolute tolerance applied to every scalar condition.
pub const TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidateError {
    #[error("checker precondition failed: {0}")]
    Precondition(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    /// Condition family, e.g. `eq1`, `admissible`, `A5`, `blind`.
    pub condition: String,
    /// Quantifier assignment that breaks the condition.
    pub witness: Vec<String>,
    pub deviation: f64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn merge(&mut self, other: ValidationReport) {
        self.violations.extend(other.violations);
    }

    fn check(&mut self, condition: &str, witness: Vec<String>, deviation: f64) {
        if deviation > TOLERANCE {
            self.violations.push(Violation { condition: condition.to_string(), witness, deviation });
        }
    }

    pub fn has_condition(&self, condition: &str) -> bool {
        self.violations.iter().any(|v| v.condition == condition)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.violations {
            writeln!(f, "COND {} WITNESS ({}) DEV {}", v.condition, v.witness.join(","), sig12(v.deviation))?;
        }
        Ok(())
    }
}

/// Runs every check that applies to `m`.
pub fn validate(m: &Machine) -> ValidationReport {
    let mut report = match m.kind() {
        MachineKind::Rtp1ca => check_stochastic(m),
        MachineKind::Rtq1ca | MachineKind::Kq1ca if m.is_simple() => check_simple_q(m),
        MachineKind::Rtq1ca | MachineKind::Kq1ca => check_general_q(m),
        MachineKind::OneWay => check_one_way_q(m),
    }
    .expect("dispatch matches checker preconditions");
    if m.is_blind() {
        report.merge(check_blind(m).expect("blind machine"));
    }
    report
}

struct Names<'a>(&'a Machine);

impl Names<'_> {
    fn q(&self, q: usize) -> String {
        self.0.states()[q].clone()
    }
    fn s(&self, s: Symbol) -> String {
        self.0.symbol_name(s).to_string()
    }
    fn t(&self, t: CounterSign) -> String {
        t.name().to_string()
    }
}

fn require(cond: bool, msg: &str) -> Result<(), ValidateError> {
    if cond {
        Ok(())
    } else {
        Err(ValidateError::Precondition(msg.to_string()))
    }
}

/// Column sums equal one and every entry is a probability.
pub fn check_stochastic(m: &Machine) -> Result<ValidationReport, ValidateError> {
    require(m.kind() == MachineKind::Rtp1ca, "check_stochastic needs an rtp1ca")?;
    let n = Names(m);
    let mut report = ValidationReport::default();
    for (q, s, sign, targets) in m.columns() {
        let sum: f64 = targets.iter().map(|t| t.amp.re).sum();
        report.check("stochastic", vec![n.q(q), n.s(s), n.t(sign)], (sum - 1.0).abs());
        for t in targets {
            let p = t.amp;
            let outside = if p.re < 0.0 {
                -p.re
            } else if p.re > 1.0 {
                p.re - 1.0
            } else {
                0.0
            };
            report.check(
                "range",
                vec![n.q(q), n.s(s), n.t(sign), n.q(t.to), t.inc.to_string()],
                outside.max(p.im.abs()),
            );
        }
    }
    Ok(report)
}

/// `Σ conj(δ₁)·δ₂` over matching `(q', ω)` slots whose increments / head moves satisfy `pairing`.
fn overlap(a: &[Target], b: &[Target], pairing: impl Fn(&Target, &Target) -> bool) -> Complex64 {
    let mut acc = Complex64::default();
    for ta in a {
        for tb in b {
            if ta.to == tb.to && ta.register == tb.register && pairing(ta, tb) {
                acc += ta.amp.conj() * tb.amp;
            }
        }
    }
    acc
}

fn incs(ta: &Target, tb: &Target, pairs: &[(Increment, Increment)]) -> bool {
    pairs.contains(&(ta.inc, tb.inc))
}

const OFFSET_ONE: [(Increment, Increment); 2] = [(Increment::Inc, Increment::Keep), (Increment::Keep, Increment::Dec)];
const OFFSET_TWO: [(Increment, Increment); 1] = [(Increment::Inc, Increment::Dec)];

/// The three local conditions for general real-time quantum machines.
///
/// `eq1` is checked for unordered state pairs (the value for the swapped pair is its
/// conjugate); `eq2` and `eq3` for all ordered pairs and independent signs.
pub fn check_general_q(m: &Machine) -> Result<ValidationReport, ValidateError> {
    require(
        matches!(m.kind(), MachineKind::Rtq1ca | MachineKind::Kq1ca),
        "check_general_q needs an rtq1ca or kq1ca",
    )?;
    let n = Names(m);
    let mut report = ValidationReport::default();
    let states = m.num_states();
    for s in m.tape_symbols() {
        for q1 in 0..states {
            for q2 in 0..states {
                for t1 in CounterSign::ALL {
                    let a = m.targets(q1, s, t1);
                    if q1 <= q2 {
                        let value = overlap(a, m.targets(q2, s, t1), |x, y| x.inc == y.inc);
                        let expected = if q1 == q2 { 1.0 } else { 0.0 };
                        report.check("eq1", vec![n.q(q1), n.q(q2), n.s(s), n.t(t1)], (value - expected).norm());
                    }
                    for t2 in CounterSign::ALL {
                        let b = m.targets(q2, s, t2);
                        let w = || vec![n.q(q1), n.q(q2), n.s(s), n.t(t1), n.t(t2)];
                        report.check("eq2", w(), overlap(a, b, |x, y| incs(x, y, &OFFSET_ONE)).norm());
                        report.check("eq3", w(), overlap(a, b, |x, y| incs(x, y, &OFFSET_TWO)).norm());
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Admissibility `Σ_ω E†E = I` of every `(σ, θ)` superoperator of a simple machine.
pub fn check_simple_q(m: &Machine) -> Result<ValidationReport, ValidateError> {
    require(
        matches!(m.kind(), MachineKind::Rtq1ca | MachineKind::Kq1ca),
        "check_simple_q needs an rtq1ca or kq1ca",
    )?;
    require(m.is_simple(), "check_simple_q needs a simple machine")?;
    let n = Names(m);
    let mut report = ValidationReport::default();
    for s in m.tape_symbols() {
        for sign in CounterSign::ALL {
            let sum = operator_sum(m, s, sign);
            for i in 0..m.num_states() {
                for j in i..m.num_states() {
                    let expected = if i == j { 1.0 } else { 0.0 };
                    report.check(
                        "admissible",
                        vec![n.s(s), n.t(sign), n.q(i), n.q(j)],
                        (sum[(i, j)] - expected).norm(),
                    );
                }
            }
        }
    }
    Ok(report)
}

/// Operation elements `E_{σ,θ,ω}` with `E[j,i]` the amplitude from `q_i` to `q_j` writing `ω`.
pub fn operation_elements(m: &Machine, s: Symbol, sign: CounterSign) -> Vec<DMatrix<Complex64>> {
    let dim = m.num_states();
    let mut ops = vec![DMatrix::<Complex64>::zeros(dim, dim); m.registers().len()];
    for i in 0..dim {
        for t in m.targets(i, s, sign) {
            if let Some(w) = t.register {
                ops[w][(t.to, i)] += t.amp;
            }
        }
    }
    ops
}

fn operator_sum(m: &Machine, s: Symbol, sign: CounterSign) -> DMatrix<Complex64> {
    let dim = m.num_states();
    operation_elements(m, s, sign)
        .iter()
        .fold(DMatrix::zeros(dim, dim), |acc, e| acc + e.adjoint() * e)
}

/// The eight families of local conditions for one-way machines.
///
/// `A1`–`A3` compare configurations on the same cell; `A4`–`A8` pair a rightward
/// move from one cell with a stationary move on the next one, for counter offsets
/// 0, +1, −1, +2 and −2 respectively.
pub fn check_one_way_q(m: &Machine) -> Result<ValidationReport, ValidateError> {
    require(m.kind() == MachineKind::OneWay, "check_one_way_q needs a 1q1ca")?;
    use HeadMove::{Right, Stay};
    use Increment::{Dec, Inc, Keep};

    let n = Names(m);
    let mut report = ValidationReport::default();
    let states = m.num_states();
    let symbols: Vec<Symbol> = m.tape_symbols().collect();
    let same_head = |x: &Target, y: &Target| x.head == y.head;
    let cross = |x: &Target, y: &Target| x.head == Some(Right) && y.head == Some(Stay);
    let shifted_families: [(&str, &[(Increment, Increment)]); 4] = [
        ("A5", &[(Inc, Keep), (Keep, Dec)]),
        ("A6", &[(Dec, Keep), (Keep, Inc)]),
        ("A7", &[(Inc, Dec)]),
        ("A8", &[(Dec, Inc)]),
    ];

    for q1 in 0..states {
        for q2 in 0..states {
            for &s in &symbols {
                for t1 in CounterSign::ALL {
                    let a = m.targets(q1, s, t1);
                    if q1 <= q2 {
                        let value = overlap(a, m.targets(q2, s, t1), |x, y| same_head(x, y) && x.inc == y.inc);
                        let expected = if q1 == q2 { 1.0 } else { 0.0 };
                        report.check("A1", vec![n.q(q1), n.q(q2), n.s(s), n.t(t1)], (value - expected).norm());
                    }
                    for t2 in CounterSign::ALL {
                        let b = m.targets(q2, s, t2);
                        let w = || vec![n.q(q1), n.q(q2), n.s(s), n.t(t1), n.t(t2)];
                        report.check("A2", w(), overlap(a, b, |x, y| same_head(x, y) && incs(x, y, &OFFSET_ONE)).norm());
                        report.check("A3", w(), overlap(a, b, |x, y| same_head(x, y) && incs(x, y, &OFFSET_TWO)).norm());
                    }
                }
                for &s2 in &symbols {
                    for t1 in CounterSign::ALL {
                        let a = m.targets(q1, s, t1);
                        let b = m.targets(q2, s2, t1);
                        report.check(
                            "A4",
                            vec![n.q(q1), n.q(q2), n.s(s), n.s(s2), n.t(t1)],
                            overlap(a, b, |x, y| cross(x, y) && x.inc == y.inc).norm(),
                        );
                        for t2 in CounterSign::ALL {
                            let b = m.targets(q2, s2, t2);
                            for (id, pairs) in &shifted_families {
                                report.check(
                                    id,
                                    vec![n.q(q1), n.q(q2), n.s(s), n.s(s2), n.t(t1), n.t(t2)],
                                    overlap(a, b, |x, y| cross(x, y) && incs(x, y, pairs)).norm(),
                                );
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Blind machines must not depend on the counter sign.
pub fn check_blind(m: &Machine) -> Result<ValidationReport, ValidateError> {
    require(m.counter_mode() == CounterMode::Blind, "check_blind needs a blind-counter machine")?;
    let n = Names(m);
    let mut report = ValidationReport::default();
    for q in 0..m.num_states() {
        for s in m.tape_symbols() {
            let lists: Vec<&[Target]> = CounterSign::ALL.iter().map(|&t| m.targets(q, s, t)).collect();
            let mut slots: Vec<&Target> = Vec::new();
            for t in lists.iter().flat_map(|l| l.iter()) {
                if !slots.iter().any(|x| x.same_slot(t)) {
                    slots.push(t);
                }
            }
            for slot in slots {
                let amp_under = |list: &[Target]| {
                    list.iter().filter(|t| t.same_slot(slot)).map(|t| t.amp).sum::<Complex64>()
                };
                let reference = amp_under(lists[0]);
                for (k, sign) in CounterSign::ALL.iter().enumerate().skip(1) {
                    let mut witness = vec![n.q(q), n.s(s), n.q(slot.to), slot.inc.to_string()];
                    if let Some(d) = slot.head {
                        witness.push(d.name().to_string());
                    }
                    if let Some(w) = slot.register {
                        witness.push(m.registers()[w].clone());
                    }
                    witness.push(n.t(*sign));
                    report.check("blind", witness, (amp_under(lists[k]) - reference).norm());
                }
            }
        }
    }
    Ok(report)
}

//! The two quantum machines for `L3` and `L4`, membership oracles for every
//! language they are compared against, and acceptance-profile classification.

mod classify;
mod lang;

use crate::model::{
    omega, scaled_inv_sqrt, Amplitude, CounterMode, HeadMove, Increment, Machine, MachineBuilder, MachineKind,
    ModelError, SignSpec, Target, CENT,
};
use crate::validate::complete_machine;

pub use classify::{classify, classify_words, enumerate_words, Classification, SweepRow, SOUNDNESS_SLACK};
pub use lang::{
    homomorphism, in_l1, in_l2, in_l3, in_l4, in_leq, in_lnh, oracle_by_name, L1Detail, LanguageOracle, ORACLE_NAMES,
};

fn real(x: f64) -> Amplitude {
    Amplitude::new(x, 0.0)
}

fn three_registers(b: &mut MachineBuilder) -> Result<(), ModelError> {
    b.registers(&["wn", "wa", "wr"])?.initial_register("wn")?.accept(&["wa"])?.reject(&["wr"])?;
    Ok(())
}

/// Blind `kq1ca` accepting members of `L3` with probability 1/4 and nothing else.
///
/// Path `q1` counts `|w|_a − |w|_c`, path `p1` counts `|w|_b − |w|_c`; on `$` a
/// two-way Fourier step cancels the accepting part when both counts agree.
pub fn build_m1() -> Machine {
    let mut b = MachineBuilder::new(MachineKind::Kq1ca);
    b.counter_mode(CounterMode::Blind);
    b.states(&["q1", "p1"]).and_then(|b| b.input(&["a", "b", "c"])).expect("fixed alphabets");
    three_registers(&mut b).expect("fixed registers");
    let (q1, p1) = (0, 1);
    let (wn, wa) = (0, 1);
    let h = scaled_inv_sqrt(1, 2);
    let sym = |name| b.symbol(name).expect("declared symbol");
    let (a, bb, c, dollar) = (sym("a"), sym("b"), sym("c"), sym("DOLLAR"));
    let to = |to, inc, register, amp| Target { to, inc, head: None, register: Some(register), amp: real(amp) };

    let program = [
        (q1, CENT, to(q1, Increment::Keep, wn, h)),
        (q1, CENT, to(p1, Increment::Keep, wn, h)),
        (p1, CENT, to(q1, Increment::Keep, wn, h)),
        (p1, CENT, to(p1, Increment::Keep, wn, -h)),
        (q1, a, to(q1, Increment::Inc, wn, 1.0)),
        (q1, bb, to(q1, Increment::Keep, wn, 1.0)),
        (q1, c, to(q1, Increment::Dec, wn, 1.0)),
        (p1, a, to(p1, Increment::Keep, wn, 1.0)),
        (p1, bb, to(p1, Increment::Inc, wn, 1.0)),
        (p1, c, to(p1, Increment::Dec, wn, 1.0)),
        (q1, dollar, to(q1, Increment::Keep, wn, h)),
        (q1, dollar, to(p1, Increment::Keep, wa, h)),
        (p1, dollar, to(q1, Increment::Keep, wn, h)),
        (p1, dollar, to(p1, Increment::Keep, wa, -h)),
    ];
    for (q, s, t) in program {
        b.transition(q, s, SignSpec::Any, t).expect("well-typed transition");
    }
    b.build().expect("consistent machine")
}

/// Number of pause states used by path `j` of the `n`-path machine.
fn path_len(n: usize, j: usize) -> usize {
    (j + 1).max(n - j + 2)
}

/// Blind one-way machine accepting members of `L4` with probability `(n−1)/n`
/// and nothing else.
///
/// Path `j` counts `|w|_a − |w|_b`, pausing `j` extra steps on every `b` and
/// `n−j+1` on every `c`, so paths reach `$` together exactly when `|w|_b = |w|_c`.
/// An `n`-way Fourier step on `$` then sends all interfering mass to the rejecting `p{n}`.
pub fn build_m2(n: usize) -> Result<Machine, ModelError> {
    if n < 2 {
        return Err(ModelError::Invalid(format!("the L4 machine needs at least 2 paths, got {n}")));
    }
    let mut states = vec!["q1".to_string()];
    for j in 1..=n {
        states.extend((1..=path_len(n, j)).map(|k| format!("q{j}.{k}")));
    }
    states.extend((1..=n).map(|l| format!("p{l}")));

    let mut b = MachineBuilder::new(MachineKind::OneWay);
    b.counter_mode(CounterMode::Blind);
    b.states(&states)?.input(&["a", "b", "c"])?;
    three_registers(&mut b)?;
    let (wn, wa, wr) = (0, 1, 2);
    let (a, bb, c, dollar) = (b.symbol("a")?, b.symbol("b")?, b.symbol("c")?, b.symbol("DOLLAR")?);
    let path = |j: usize, k: usize| b.state(&format!("q{j}.{k}")).expect("declared state");
    let p = |l: usize| b.state(&format!("p{l}")).expect("declared state");
    let to = |to, inc, head, register, amp| Target { to, inc, head: Some(head), register: Some(register), amp };

    let mut program = Vec::new();
    let split = real(scaled_inv_sqrt(1, n as i64));
    for j in 1..=n {
        program.push((0, CENT, to(path(j, 1), Increment::Keep, HeadMove::Right, wn, split)));
        program.push((path(j, 1), a, to(path(j, 1), Increment::Inc, HeadMove::Right, wn, real(1.0))));

        program.push((path(j, 1), bb, to(path(j, 2), Increment::Dec, HeadMove::Stay, wn, real(1.0))));
        for k in 2..=j {
            program.push((path(j, k), bb, to(path(j, k + 1), Increment::Keep, HeadMove::Stay, wn, real(1.0))));
        }
        program.push((path(j, j + 1), bb, to(path(j, 1), Increment::Keep, HeadMove::Right, wn, real(1.0))));

        let c_pause = n - j + 2;
        for k in 1..c_pause {
            program.push((path(j, k), c, to(path(j, k + 1), Increment::Keep, HeadMove::Stay, wn, real(1.0))));
        }
        program.push((path(j, c_pause), c, to(path(j, 1), Increment::Keep, HeadMove::Right, wn, real(1.0))));

        for l in 1..=n {
            let amp = split * omega((j * l) as i64, n as i64);
            program.push((path(j, 1), dollar, to(p(l), Increment::Keep, HeadMove::Stay, wn, amp)));
        }
    }
    for l in 1..=n {
        let register = if l < n { wa } else { wr };
        program.push((p(l), dollar, to(p(l), Increment::Keep, HeadMove::Stay, register, real(1.0))));
    }
    for (q, s, t) in program {
        b.transition(q, s, SignSpec::Any, t)?;
    }
    let partial = b.build()?;
    complete_machine(&partial).map_err(|e| ModelError::Invalid(format!("completion failed: {e}")))
}

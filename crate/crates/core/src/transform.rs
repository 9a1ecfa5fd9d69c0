//! Compilation between machine models.

use rand::Rng;
use thiserror::Error;

use crate::model::{
    Amplitude, CounterMode, CounterSign, Increment, Machine, MachineBuilder, MachineKind, ModelError, SignSpec,
    Symbol, Target,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TransformError {
    #[error("expected an rtp1ca, got a {0} machine")]
    WrongKind(&'static str),
    #[error("the machine is not simple; run `simplify` on it first")]
    NotSimple,
    #[error(transparent)]
    Model(#[from] ModelError),
}

fn require_rtp1ca(m: &Machine) -> Result<(), TransformError> {
    if m.kind() == MachineKind::Rtp1ca {
        Ok(())
    } else {
        Err(TransformError::WrongKind(m.kind().name()))
    }
}

fn builder_like(m: &Machine, kind: MachineKind, states: &[String]) -> Result<MachineBuilder, ModelError> {
    let mut b = MachineBuilder::new(kind);
    b.counter_mode(m.counter_mode()).simple(true);
    b.states(states)?.input(m.input_alphabet())?;
    Ok(b)
}

/// Order in which the increment-tagged copies of a state are listed; the untagged
/// copy comes first so that the initial state keeps index 0.
const TAGS: [Increment; 3] = [Increment::Keep, Increment::Dec, Increment::Inc];

fn tagged(q: usize, c: Increment) -> usize {
    3 * q + TAGS.iter().position(|&t| t == c).expect("every increment is tagged")
}

/// Equivalent simple rtp1ca whose states `q[c]` remember the increment `c` used to
/// enter `q`, so the increment becomes a function of the target state.
pub fn simplify_rtp1ca(m: &Machine) -> Result<Machine, TransformError> {
    require_rtp1ca(m)?;
    let states: Vec<String> =
        m.states().iter().flat_map(|q| TAGS.iter().map(move |c| format!("{q}[{c}]"))).collect();
    let mut b = builder_like(m, MachineKind::Rtp1ca, &states)?;
    let accepting: Vec<&String> = (0..states.len()).filter(|i| m.is_accepting_state(i / 3)).map(|i| &states[i]).collect();
    b.accept(&accepting)?;
    for (i, &c) in (0..states.len()).zip(TAGS.iter().cycle()) {
        b.dc(i, None, c);
    }
    for (q, s, sign, targets) in m.columns() {
        for t in targets {
            let target = Target { to: tagged(t.to, t.inc), ..t.clone() };
            for copy in 0..3 {
                b.transition(3 * q + copy, s, SignSpec::One(sign), target.clone())?;
            }
        }
    }
    Ok(b.build()?)
}

/// Register name recording a move from state `i` to state `j` (1-based).
pub fn pair_register(i: usize, j: usize) -> String {
    format!("w_{i}_{j}")
}

/// Simple rtq1ca tracing the same computation paths as a simple rtp1ca.
///
/// Moving from `q_i` to `q_j` with probability `p` becomes amplitude `√p` while
/// writing the register symbol `w_i_j`, so distinct source paths never interfere.
/// The symbols `w_i_j` with `q_j` accepting are accepting.
pub fn lift_p_to_q(m: &Machine) -> Result<Machine, TransformError> {
    require_rtp1ca(m)?;
    if !m.is_simple() {
        return Err(TransformError::NotSimple);
    }
    let n = m.num_states();
    let mut b = builder_like(m, MachineKind::Rtq1ca, m.states())?;
    let registers: Vec<String> = (1..=n).flat_map(|i| (1..=n).map(move |j| pair_register(i, j))).collect();
    b.registers(&registers)?.initial_register(&pair_register(1, 1))?;
    let accepting: Vec<String> =
        (1..=n).flat_map(|i| (1..=n).filter(|&j| m.is_accepting_state(j - 1)).map(move |j| pair_register(i, j))).collect();
    b.accept(&accepting)?;
    for q in 0..n {
        for s in m.tape_symbols() {
            b.dc(q, Some(s), m.dc(q, s).expect("simple machine"));
        }
    }
    for (q, s, sign, targets) in m.columns() {
        for t in targets {
            let target = Target {
                register: Some(q * n + t.to),
                amp: Amplitude::new(t.amp.re.max(0.0).sqrt(), 0.0),
                ..t.clone()
            };
            b.transition(q, s, SignSpec::One(sign), target)?;
        }
    }
    Ok(b.build()?)
}

/// Random well-formed rtp1ca in checked mode with states `q1…` and input symbols `a, b, …`.
///
/// Every column is a normalized vector of independent uniforms over the `3·n_states`
/// (target, increment) slots, with roughly a third of the slots zeroed.
pub fn random_rtp1ca<R: Rng + ?Sized>(rng: &mut R, n_states: usize, n_symbols: usize) -> Machine {
    assert!(n_states >= 1 && (1..=26).contains(&n_symbols));
    let states: Vec<String> = (1..=n_states).map(|i| format!("q{i}")).collect();
    let input: Vec<String> = (0..n_symbols).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
    let mut b = MachineBuilder::new(MachineKind::Rtp1ca);
    b.counter_mode(CounterMode::Checked);
    b.states(&states).and_then(|b| b.input(&input)).expect("generated identifiers are valid");
    let accepting: Vec<&String> = states.iter().filter(|_| rng.gen_bool(0.5)).collect();
    b.accept(&accepting).expect("declared states");

    let slots: Vec<(usize, Increment)> =
        (0..n_states).flat_map(|q| Increment::ALL.into_iter().map(move |c| (q, c))).collect();
    for q in 0..n_states {
        for s in (0..n_symbols + 2).map(Symbol) {
            for sign in CounterSign::ALL {
                let mut weights: Vec<f64> =
                    slots.iter().map(|_| if rng.gen_bool(0.35) { 0.0 } else { rng.gen::<f64>() }).collect();
                if weights.iter().all(|&x| x == 0.0) {
                    let k = rng.gen_range(0..weights.len());
                    weights[k] = 1.0;
                }
                let total: f64 = weights.iter().sum();
                for (&(to, inc), w) in slots.iter().zip(weights) {
                    if w > 0.0 {
                        let t = Target { to, inc, head: None, register: None, amp: Amplitude::new(w / total, 0.0) };
                        b.transition(q, s, SignSpec::One(sign), t).expect("fresh slot");
                    }
                }
            }
        }
    }
    b.build().expect("generated machine is consistent")
}

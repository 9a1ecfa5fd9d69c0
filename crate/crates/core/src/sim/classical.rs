use std::collections::BTreeMap;

use crate::model::{CounterSign, Machine, MachineKind, RunOutcome};

use super::{finish, SimError};

/// Forward propagation of the distribution over `(state, counter)`.
///
/// Accepts with the mass sitting on accepting states after `$`; blind machines
/// additionally need the counter back at zero.
pub fn run_rtp1ca(m: &Machine, w: &str) -> Result<RunOutcome, SimError> {
    if m.kind() != MachineKind::Rtp1ca {
        return Err(SimError::WrongKind { expected: "an rtp1ca", got: m.kind().name() });
    }
    let tape = m.tape_string(w)?;
    let mut dist: BTreeMap<(usize, i64), f64> = BTreeMap::new();
    dist.insert((0, 0), 1.0);
    for &symbol in &tape {
        let mut next: BTreeMap<(usize, i64), f64> = BTreeMap::new();
        for (&(q, k), &p) in &dist {
            for t in m.targets(q, symbol, CounterSign::of(k)) {
                let prob = t.amp.re;
                if prob != 0.0 {
                    *next.entry((t.to, k + t.inc.value())).or_default() += p * prob;
                }
            }
        }
        dist = next;
    }
    let accept: f64 = dist
        .iter()
        .filter(|((q, k), _)| m.is_accepting_state(*q) && (!m.is_blind() || *k == 0))
        .map(|(_, p)| p)
        .sum();
    Ok(finish(accept, 1.0 - accept, 0.0, tape.len()))
}

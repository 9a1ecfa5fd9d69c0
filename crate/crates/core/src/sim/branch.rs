use std::collections::BTreeMap;

use crate::model::{Branch, Mixture, PureState, RunOutcome};

use super::{finish, EngineOptions, Fate, Semantics, SimError, Stepper};

/// Branch-engine run; `observe` sees the mixture after every step.
///
/// Every step splits each branch into one unnormalized sub-branch per register
/// symbol written. Sub-branches are never merged, even when their last symbols agree.
pub fn run_branch_observed(
    m: &crate::model::Machine,
    w: &str,
    semantics: Semantics,
    opts: &EngineOptions,
    mut observe: impl FnMut(usize, &Mixture),
) -> Result<RunOutcome, SimError> {
    let stepper = Stepper::new(m, w, semantics, opts)?;
    let tape_len = stepper.tape.len();
    let max_steps = opts.resolved_max_steps(m, tape_len)?;
    let initial_register = m.initial_register().ok_or(SimError::WrongKind {
        expected: "a quantum machine",
        got: m.kind().name(),
    })?;

    let mut mixture = Mixture {
        branches: vec![Branch { last_register: initial_register, state: PureState::basis(stepper.start()) }],
        accept_mass: 0.0,
        reject_mass: 0.0,
    };
    let mut steps = 0;
    while !mixture.branches.is_empty() && steps < max_steps {
        steps += 1;
        let mut next = Vec::new();
        for branch in &mixture.branches {
            let mut split: BTreeMap<usize, PureState> = BTreeMap::new();
            for (c, &alpha) in branch.state.iter() {
                for succ in stepper.successors(c, steps)? {
                    split.entry(succ.register).or_default().add(succ.to, alpha * succ.amp);
                }
            }
            for (register, mut state) in split {
                state.prune(opts.prune_eps);
                if state.is_empty() {
                    continue;
                }
                if stepper.continues(register, steps) {
                    next.push(Branch { last_register: register, state });
                    if next.len() > opts.branch_cap {
                        return Err(SimError::BranchCap { count: next.len(), cap: opts.branch_cap });
                    }
                    continue;
                }
                for (c, a) in state.iter() {
                    match stepper.resolve(register, c) {
                        Fate::Accept => mixture.accept_mass += a.norm_sqr(),
                        _ => mixture.reject_mass += a.norm_sqr(),
                    }
                }
            }
        }
        mixture.branches = next;
        observe(steps, &mixture);
        if stepper.is_real_time() && steps == tape_len {
            break;
        }
    }

    let unresolved = mixture.live_mass();
    if semantics == Semantics::RealTime {
        return Ok(finish(mixture.accept_mass, 1.0 - mixture.accept_mass, 0.0, steps));
    }
    Ok(finish(mixture.accept_mass, mixture.reject_mass, unresolved, steps))
}

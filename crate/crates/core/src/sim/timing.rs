use std::collections::BTreeMap;

use crate::model::Machine;
use crate::zoo::build_m2;

use super::{run_branch_observed, EngineOptions, Semantics, SimError};

/// Step at which path `path` of the `n`-path machine first stands on `$` in its base state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PathArrival {
    pub path: usize,
    pub step: usize,
}

/// Closed-form arrival step `|w| + j·|w|_b + (n−j+1)·|w|_c + 1` of path `j`.
pub fn m2_arrival_step(n: usize, j: usize, w: &str) -> usize {
    let count = |ch| w.chars().filter(|&c| c == ch).count();
    w.chars().count() + j * count('b') + (n - j + 1) * count('c') + 1
}

/// Runs the `L4` machine on `w` and records, per path, the first step at which
/// amplitude reaches the right end-marker in that path's base state.
pub fn path_timing(m: &Machine, w: &str) -> Result<Vec<PathArrival>, SimError> {
    let n = m.states().iter().filter(|s| s.starts_with('p')).count();
    match build_m2(n) {
        Ok(reference) if reference == *m => {}
        _ => return Err(SimError::Unsupported("path timing is defined only for the L4 machine family".into())),
    }
    let base: BTreeMap<usize, usize> =
        (1..=n).map(|j| (m.state_index(&format!("q{j}.1")).expect("base state exists"), j)).collect();
    let dollar_pos = m.tape_string(w)?.len();

    let mut arrivals: BTreeMap<usize, usize> = BTreeMap::new();
    run_branch_observed(m, w, Semantics::OneWay, &EngineOptions::default(), |step, mixture| {
        for branch in &mixture.branches {
            for (c, _) in branch.state.iter() {
                if c.head == dollar_pos {
                    if let Some(&j) = base.get(&c.state) {
                        arrivals.entry(j).or_insert(step);
                    }
                }
            }
        }
    })?;
    Ok(arrivals.into_iter().map(|(path, step)| PathArrival { path, step }).collect())
}

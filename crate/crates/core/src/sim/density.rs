use std::collections::{BTreeMap, BTreeSet};

use num_complex::Complex64;

use crate::model::{Configuration, Machine, RunOutcome};

use super::{finish, EngineOptions, Fate, Semantics, SimError, Stepper, Successor};

/// Sparse Hermitian matrix over configurations.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct DensityMatrix {
    entries: BTreeMap<(Configuration, Configuration), Complex64>,
}

impl DensityMatrix {
    pub fn pure(c: Configuration) -> Self {
        let mut entries = BTreeMap::new();
        entries.insert((c, c), Complex64::new(1.0, 0.0));
        DensityMatrix { entries }
    }

    pub fn get(&self, a: &Configuration, b: &Configuration) -> Complex64 {
        self.entries.get(&(*a, *b)).copied().unwrap_or_default()
    }

    pub fn trace(&self) -> f64 {
        self.entries.iter().filter(|((a, b), _)| a == b).map(|(_, v)| v.re).sum()
    }

    /// Configurations carrying nonzero entries.
    pub fn support(&self) -> BTreeSet<Configuration> {
        self.entries.keys().flat_map(|(a, b)| [*a, *b]).collect()
    }

    pub fn dimension(&self) -> usize {
        self.support().len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(Configuration, Configuration), &Complex64)> {
        self.entries.iter()
    }

    /// Largest `|ρ[a,b] − conj(ρ[b,a])|`.
    pub fn hermiticity_defect(&self) -> f64 {
        self.entries
            .iter()
            .map(|((a, b), v)| (*v - self.get(b, a).conj()).norm())
            .fold(0.0, f64::max)
    }

    /// Removes configurations whose diagonal weight is below `eps`.
    fn prune(&mut self, eps: f64) {
        let weak: BTreeSet<Configuration> = self
            .entries
            .iter()
            .filter(|((a, b), v)| a == b && v.re < eps)
            .map(|((a, _), _)| *a)
            .collect();
        self.entries.retain(|(a, b), v| !weak.contains(a) && !weak.contains(b) && *v != Complex64::default());
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct DensityState {
    pub rho: DensityMatrix,
    pub accept_mass: f64,
    pub reject_mass: f64,
}

impl DensityState {
    pub fn total_mass(&self) -> f64 {
        self.rho.trace() + self.accept_mass + self.reject_mass
    }
}

/// Density-engine run; `observe` sees the state after every step.
///
/// Each step maps `ρ ↦ Σ_ω E_ω ρ E_ω†`. Register symbols that halt the run
/// contribute only their diagonal weight, to the accept or reject mass.
pub fn run_density_observed(
    m: &Machine,
    w: &str,
    semantics: Semantics,
    opts: &EngineOptions,
    mut observe: impl FnMut(usize, &DensityState),
) -> Result<RunOutcome, SimError> {
    if !m.kind().is_quantum() {
        return Err(SimError::WrongKind { expected: "a quantum machine", got: m.kind().name() });
    }
    let stepper = Stepper::new(m, w, semantics, opts)?;
    let tape_len = stepper.tape.len();
    let max_steps = opts.resolved_max_steps(m, tape_len)?;

    let mut state = DensityState { rho: DensityMatrix::pure(stepper.start()), ..Default::default() };
    let mut steps = 0;
    while !state.rho.entries.is_empty() && steps < max_steps {
        steps += 1;
        let mut successors: BTreeMap<Configuration, Vec<Successor>> = BTreeMap::new();
        for c in state.rho.support() {
            successors.insert(c, stepper.successors(&c, steps)?);
        }
        let mut next: BTreeMap<(Configuration, Configuration), Complex64> = BTreeMap::new();
        let mut halted: BTreeMap<(usize, Configuration), f64> = BTreeMap::new();
        for (&(a, b), &r) in &state.rho.entries {
            for (sa, sb) in matching_registers(&successors[&a], &successors[&b]) {
                let v = sa.amp * r * sb.amp.conj();
                if stepper.continues(sa.register, steps) {
                    *next.entry((sa.to, sb.to)).or_default() += v;
                } else if sa.to == sb.to {
                    *halted.entry((sa.register, sa.to)).or_default() += v.re;
                }
            }
        }
        for ((register, c), weight) in halted {
            match stepper.resolve(register, &c) {
                Fate::Accept => state.accept_mass += weight,
                Fate::Reject => state.reject_mass += weight,
            }
        }
        state.rho.entries = next;
        state.rho.prune(opts.prune_eps);
        let dim = state.rho.dimension();
        if dim > opts.density_cap {
            return Err(SimError::DensityCap { dim, cap: opts.density_cap });
        }
        observe(steps, &state);
        if stepper.is_real_time() && steps == tape_len {
            break;
        }
    }

    if semantics == Semantics::RealTime {
        return Ok(finish(state.accept_mass, 1.0 - state.accept_mass, 0.0, steps));
    }
    Ok(finish(state.accept_mass, state.reject_mass, state.rho.trace(), steps))
}

/// Pairs of successors writing the same register symbol; both inputs are sorted by register.
fn matching_registers<'a>(a: &'a [Successor], b: &'a [Successor]) -> Vec<(&'a Successor, &'a Successor)> {
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        let (ra, rb) = (a[i].register, b[j].register);
        if ra < rb {
            i += 1;
        } else if rb < ra {
            j += 1;
        } else {
            let i_end = i + a[i..].iter().take_while(|s| s.register == ra).count();
            let j_end = j + b[j..].iter().take_while(|s| s.register == ra).count();
            for sa in &a[i..i_end] {
                for sb in &b[j..j_end] {
                    out.push((sa, sb));
                }
            }
            i = i_end;
            j = j_end;
        }
    }
    out
}

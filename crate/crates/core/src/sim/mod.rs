//! Execution engines.
//!
//! Probabilistic machines propagate a distribution over `(state, counter)`.
//! Quantum machines run either on the branch engine (a list of decohered pure
//! states, one per register outcome history) or on the density engine (a sparse
//! density matrix over configurations). Both apply the same measurement and
//! halting rules and agree to within rounding.

mod branch;
mod classical;
mod density;
mod timing;

use num_complex::Complex64;
use thiserror::Error;

use crate::model::{Configuration, CounterSign, HeadMove, Machine, MachineKind, ModelError, RunOutcome, Symbol};

pub use branch::run_branch_observed;
pub use classical::run_rtp1ca;
pub use density::{run_density_observed, DensityMatrix, DensityState};
pub use timing::{m2_arrival_step, path_timing, PathArrival};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("engine expects {expected}, got a {got} machine")]
    WrongKind { expected: &'static str, got: &'static str },
    #[error("invalid engine options: {0}")]
    Options(String),
    #[error("branch count {count} exceeds the cap of {cap}; rerun with the density engine")]
    BranchCap { count: usize, cap: usize },
    #[error("density matrix over {dim} configurations exceeds the cap of {cap}")]
    DensityCap { dim: usize, cap: usize },
    #[error("state `{state}` moves the head past the right end-marker at step {step}")]
    HeadOverrun { state: String, step: usize },
    #[error("unsupported: {0}")]
    Unsupported(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Engine {
    #[default]
    Branch,
    Density,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EngineOptions {
    pub engine: Engine,
    /// Defaults to `4·(|w|+2)·(|Q|+2)`.
    pub max_steps: Option<usize>,
    pub branch_cap: usize,
    /// Amplitudes with squared modulus below this are dropped after every step.
    pub prune_eps: f64,
    /// Largest number of configurations the density engine may track at once.
    pub density_cap: usize,
    /// Initial counter value; blind acceptance requires the counter to be back here.
    pub counter_origin: i64,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions {
            engine: Engine::Branch,
            max_steps: None,
            branch_cap: 10_000,
            prune_eps: 1e-24,
            density_cap: 2048,
            counter_origin: 0,
        }
    }
}

impl EngineOptions {
    pub fn density() -> Self {
        EngineOptions { engine: Engine::Density, ..Self::default() }
    }

    pub(crate) fn resolved_max_steps(&self, m: &Machine, tape_len: usize) -> Result<usize, SimError> {
        let steps = self.max_steps.unwrap_or(4 * tape_len * (m.num_states() + 2));
        if steps < tape_len {
            return Err(SimError::Options(format!("max_steps {steps} is below |w|+2 = {tape_len}")));
        }
        if self.branch_cap == 0 {
            return Err(SimError::Options("branch_cap must be at least 1".into()));
        }
        Ok(steps)
    }
}

/// Measurement and halting discipline.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Semantics {
    /// Register observed once, after the `$` step.
    RealTime,
    /// Register observed after every step; `a`/`r` halt.
    Kravtsev,
    /// As `Kravtsev`, but the head may pause and the run continues past `$` until it halts.
    OneWay,
}

impl Semantics {
    pub fn for_kind(kind: MachineKind) -> Option<Self> {
        match kind {
            MachineKind::Rtp1ca => None,
            MachineKind::Rtq1ca => Some(Semantics::RealTime),
            MachineKind::Kq1ca => Some(Semantics::Kravtsev),
            MachineKind::OneWay => Some(Semantics::OneWay),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Fate {
    Accept,
    Reject,
}

pub(crate) struct Successor {
    pub register: usize,
    pub to: Configuration,
    pub amp: Complex64,
}

/// Per-run view of a machine on one tape.
pub(crate) struct Stepper<'m> {
    pub m: &'m Machine,
    pub tape: Vec<Symbol>,
    pub semantics: Semantics,
    pub origin: i64,
}

impl<'m> Stepper<'m> {
    pub fn new(m: &'m Machine, w: &str, semantics: Semantics, opts: &EngineOptions) -> Result<Self, SimError> {
        Ok(Stepper { m, tape: m.tape_string(w)?, semantics, origin: opts.counter_origin })
    }

    pub fn start(&self) -> Configuration {
        Configuration { state: 0, head: 1, counter: self.origin }
    }

    pub fn is_real_time(&self) -> bool {
        self.semantics != Semantics::OneWay
    }

    /// Successors of `c`, sorted by register symbol.
    pub fn successors(&self, c: &Configuration, step: usize) -> Result<Vec<Successor>, SimError> {
        let symbol = self.tape[c.head - 1];
        let sign = CounterSign::of(c.counter);
        let mut out = Vec::new();
        for t in self.m.targets(c.state, symbol, sign) {
            if t.amp == Complex64::default() {
                continue;
            }
            let head = match (self.is_real_time(), t.head) {
                (true, _) => c.head + 1,
                (false, Some(HeadMove::Right)) => c.head + 1,
                (false, _) => c.head,
            };
            if !self.is_real_time() && head > self.tape.len() {
                return Err(SimError::HeadOverrun { state: self.m.states()[c.state].clone(), step });
            }
            out.push(Successor {
                register: t.register.expect("quantum transitions write a register"),
                to: Configuration { state: t.to, head, counter: c.counter + t.inc.value() },
                amp: t.amp,
            });
        }
        out.sort_by_key(|s| s.register);
        Ok(out)
    }

    /// Whether mass written with `register` keeps running; otherwise it halts and is
    /// settled per configuration by [`Stepper::resolve`].
    pub fn continues(&self, register: usize, step: usize) -> bool {
        let final_step = self.is_real_time() && step == self.tape.len();
        match self.semantics {
            Semantics::RealTime => !final_step,
            Semantics::Kravtsev | Semantics::OneWay => {
                !final_step && !self.m.is_accepting_register(register) && !self.m.is_rejecting_register(register)
            }
        }
    }

    /// Outcome of halting mass in configuration `c` after writing `register`.
    pub fn resolve(&self, register: usize, c: &Configuration) -> Fate {
        if !self.m.is_accepting_register(register) {
            return Fate::Reject;
        }
        if !self.m.is_blind() {
            return Fate::Accept;
        }
        // Blind acceptance: input fully processed and counter back at its origin.
        let input_done = if self.is_real_time() { c.head == self.tape.len() + 1 } else { c.head == self.tape.len() };
        if input_done && c.counter == self.origin {
            Fate::Accept
        } else {
            Fate::Reject
        }
    }
}

fn expect_kind(m: &Machine, allowed: &[MachineKind], expected: &'static str) -> Result<(), SimError> {
    if allowed.contains(&m.kind()) {
        Ok(())
    } else {
        Err(SimError::WrongKind { expected, got: m.kind().name() })
    }
}

fn run_quantum(m: &Machine, w: &str, semantics: Semantics, opts: &EngineOptions) -> Result<RunOutcome, SimError> {
    match opts.engine {
        Engine::Branch => run_branch_observed(m, w, semantics, opts, |_, _| {}),
        Engine::Density => run_density_observed(m, w, semantics, opts, |_, _| {}),
    }
}

/// Real-time quantum run with the register observed once after `$`. Also accepts
/// `kq1ca` machines, which are then run without intermediate observations.
pub fn run_rtq1ca(m: &Machine, w: &str, opts: &EngineOptions) -> Result<RunOutcome, SimError> {
    expect_kind(m, &[MachineKind::Rtq1ca, MachineKind::Kq1ca], "a real-time quantum machine")?;
    run_quantum(m, w, Semantics::RealTime, opts)
}

pub fn run_kq1ca(m: &Machine, w: &str, opts: &EngineOptions) -> Result<RunOutcome, SimError> {
    expect_kind(m, &[MachineKind::Kq1ca], "a kq1ca")?;
    run_quantum(m, w, Semantics::Kravtsev, opts)
}

pub fn run_1q1ca(m: &Machine, w: &str, opts: &EngineOptions) -> Result<RunOutcome, SimError> {
    expect_kind(m, &[MachineKind::OneWay], "a 1q1ca")?;
    run_quantum(m, w, Semantics::OneWay, opts)
}

/// Density-matrix run under the machine's own semantics.
pub fn run_density(m: &Machine, w: &str, opts: &EngineOptions) -> Result<RunOutcome, SimError> {
    let semantics = Semantics::for_kind(m.kind())
        .ok_or(SimError::WrongKind { expected: "a quantum machine", got: m.kind().name() })?;
    run_density_observed(m, w, semantics, opts, |_, _| {})
}

/// Runs `m` on `w` under the semantics of its kind.
pub fn run(m: &Machine, w: &str, opts: &EngineOptions) -> Result<RunOutcome, SimError> {
    match m.kind() {
        MachineKind::Rtp1ca => run_rtp1ca(m, w),
        MachineKind::Rtq1ca => run_rtq1ca(m, w, opts),
        MachineKind::Kq1ca => run_kq1ca(m, w, opts),
        MachineKind::OneWay => run_1q1ca(m, w, opts),
    }
}

pub(crate) fn finish(accept: f64, reject: f64, unresolved: f64, steps: usize) -> RunOutcome {
    RunOutcome { accept: accept.max(0.0), reject: reject.max(0.0), unresolved: unresolved.max(0.0), steps }
}

//! Machines, configurations and superpositions.

mod amplitude;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_complex::Complex64;
use thiserror::Error;

pub use amplitude::{format_amplitude, omega, parse_amplitude, scaled_inv_sqrt, Amplitude, AmplitudeError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("symbol `{0}` is not in the input alphabet")]
    Alphabet(String),
    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },
    #[error("duplicate {kind} `{name}`")]
    Duplicate { kind: &'static str, name: String },
    #[error("invalid machine: {0}")]
    Invalid(String),
}

/// Sign of the counter as seen by a transition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CounterSign {
    Zero,
    Plus,
    Minus,
}

impl CounterSign {
    pub const ALL: [CounterSign; 3] = [CounterSign::Zero, CounterSign::Plus, CounterSign::Minus];

    pub fn of(k: i64) -> Self {
        match k.signum() {
            0 => CounterSign::Zero,
            1 => CounterSign::Plus,
            _ => CounterSign::Minus,
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            CounterSign::Zero => "zero",
            CounterSign::Plus => "plus",
            CounterSign::Minus => "minus",
        }
    }
}

/// Shorthand for [`CounterSign::of`].
pub fn counter_sign(k: i64) -> CounterSign {
    CounterSign::of(k)
}

/// Counter update applied by a transition: one of −1, 0, +1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Increment {
    Dec,
    Keep,
    Inc,
}

impl Increment {
    pub const ALL: [Increment; 3] = [Increment::Dec, Increment::Keep, Increment::Inc];

    pub fn value(self) -> i64 {
        match self {
            Increment::Dec => -1,
            Increment::Keep => 0,
            Increment::Inc => 1,
        }
    }

    pub fn from_value(v: i64) -> Option<Self> {
        match v {
            -1 => Some(Increment::Dec),
            0 => Some(Increment::Keep),
            1 => Some(Increment::Inc),
            _ => None,
        }
    }
}

impl fmt::Display for Increment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Increment::Dec => "-1",
            Increment::Keep => "0",
            Increment::Inc => "+1",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HeadMove {
    Stay,
    Right,
}

impl HeadMove {
    pub fn name(self) -> &'static str {
        match self {
            HeadMove::Stay => "stay",
            HeadMove::Right => "right",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MachineKind {
    /// Real-time probabilistic.
    Rtp1ca,
    /// Real-time quantum with a register observed after `$`.
    Rtq1ca,
    /// Real-time quantum with the register observed after every step (neutral/accept/reject).
    Kq1ca,
    /// One-way quantum; the head may pause.
    OneWay,
}

impl MachineKind {
    pub fn name(self) -> &'static str {
        match self {
            MachineKind::Rtp1ca => "rtp1ca",
            MachineKind::Rtq1ca => "rtq1ca",
            MachineKind::Kq1ca => "kq1ca",
            MachineKind::OneWay => "1q1ca",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "rtp1ca" => Some(MachineKind::Rtp1ca),
            "rtq1ca" => Some(MachineKind::Rtq1ca),
            "kq1ca" => Some(MachineKind::Kq1ca),
            "1q1ca" => Some(MachineKind::OneWay),
            _ => None,
        }
    }

    pub fn is_quantum(self) -> bool {
        self != MachineKind::Rtp1ca
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CounterMode {
    Checked,
    /// The sign is never consulted; acceptance additionally needs the counter back at its origin.
    Blind,
}

/// Index into the tape alphabet: `0` is `¢`, `1..=|Σ|` are input symbols, `|Σ|+1` is `$`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol(pub usize);

pub const CENT: Symbol = Symbol(0);

/// One outgoing transition.
#[derive(Debug, Clone, PartialEq)]
pub struct Target {
    pub to: usize,
    pub inc: Increment,
    /// Present only for one-way machines.
    pub head: Option<HeadMove>,
    /// Register symbol written; absent for probabilistic machines.
    pub register: Option<usize>,
    /// Amplitude, or probability (real part) for probabilistic machines.
    pub amp: Amplitude,
}

impl Target {
    /// Same transition slot (target state, increment, head move, register) as `other`.
    pub fn same_slot(&self, other: &Target) -> bool {
        self.to == other.to && self.inc == other.inc && self.head == other.head && self.register == other.register
    }
}

/// A complete automaton description. Identifiers are arbitrary nonempty tokens;
/// their order fixes matrix row and column indices.
#[derive(Debug, Clone, PartialEq)]
pub struct Machine {
    kind: MachineKind,
    counter_mode: CounterMode,
    states: Vec<String>,
    input: Vec<String>,
    registers: Vec<String>,
    initial_register: Option<usize>,
    /// Accepting states for `rtp1ca`, accepting register symbols otherwise.
    accepting: BTreeSet<usize>,
    rejecting: BTreeSet<usize>,
    dc: Option<Vec<Increment>>,
    transitions: Vec<Vec<Target>>,
}

impl Machine {
    pub fn kind(&self) -> MachineKind {
        self.kind
    }

    pub fn counter_mode(&self) -> CounterMode {
        self.counter_mode
    }

    pub fn is_blind(&self) -> bool {
        self.counter_mode == CounterMode::Blind
    }

    pub fn is_simple(&self) -> bool {
        self.dc.is_some()
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn input_alphabet(&self) -> &[String] {
        &self.input
    }

    pub fn registers(&self) -> &[String] {
        &self.registers
    }

    pub fn initial_register(&self) -> Option<usize> {
        self.initial_register
    }

    pub fn accepting(&self) -> &BTreeSet<usize> {
        &self.accepting
    }

    pub fn rejecting(&self) -> &BTreeSet<usize> {
        &self.rejecting
    }

    pub fn is_accepting_register(&self, omega: usize) -> bool {
        self.kind.is_quantum() && self.accepting.contains(&omega)
    }

    pub fn is_rejecting_register(&self, omega: usize) -> bool {
        self.kind.is_quantum() && self.rejecting.contains(&omega)
    }

    pub fn is_accepting_state(&self, q: usize) -> bool {
        self.kind == MachineKind::Rtp1ca && self.accepting.contains(&q)
    }

    /// Number of tape symbols, end-markers included.
    pub fn num_tape_symbols(&self) -> usize {
        self.input.len() + 2
    }

    pub fn dollar(&self) -> Symbol {
        Symbol(self.input.len() + 1)
    }

    pub fn tape_symbols(&self) -> impl Iterator<Item = Symbol> {
        (0..self.num_tape_symbols()).map(Symbol)
    }

    pub fn symbol_name(&self, s: Symbol) -> &str {
        if s == CENT {
            "CENT"
        } else if s == self.dollar() {
            "DOLLAR"
        } else {
            &self.input[s.0 - 1]
        }
    }

    /// Resolves a tape symbol by name; `CENT`, `DOLLAR`, `¢` and `$` denote the end-markers.
    pub fn symbol_by_name(&self, name: &str) -> Option<Symbol> {
        match name {
            "CENT" | "¢" => Some(CENT),
            "DOLLAR" | "$" => Some(self.dollar()),
            _ => self.input.iter().position(|s| s == name).map(|i| Symbol(i + 1)),
        }
    }

    pub fn state_index(&self, name: &str) -> Option<usize> {
        self.states.iter().position(|s| s == name)
    }

    pub fn register_index(&self, name: &str) -> Option<usize> {
        self.registers.iter().position(|s| s == name)
    }

    fn slot(&self, q: usize, s: Symbol, sign: CounterSign) -> usize {
        (q * self.num_tape_symbols() + s.0) * 3 + sign.index()
    }

    pub fn targets(&self, q: usize, s: Symbol, sign: CounterSign) -> &[Target] {
        &self.transitions[self.slot(q, s, sign)]
    }

    /// Mutable access to one transition list; callers are responsible for keeping
    /// the structural invariants (simple increments, head moves) intact.
    pub fn targets_mut(&mut self, q: usize, s: Symbol, sign: CounterSign) -> &mut Vec<Target> {
        let slot = self.slot(q, s, sign);
        &mut self.transitions[slot]
    }

    /// Every `(q, σ, θ)` key together with its transition list.
    pub fn columns(&self) -> impl Iterator<Item = (usize, Symbol, CounterSign, &[Target])> + '_ {
        (0..self.num_states()).flat_map(move |q| {
            self.tape_symbols().flat_map(move |s| {
                CounterSign::ALL.into_iter().map(move |sign| (q, s, sign, self.targets(q, s, sign)))
            })
        })
    }

    pub fn dc(&self, q: usize, s: Symbol) -> Option<Increment> {
        self.dc.as_ref().map(|dc| dc[q * self.num_tape_symbols() + s.0])
    }

    /// The same machine without the simple-machine marker (increments stay on the targets).
    pub fn as_general(&self) -> Machine {
        Machine { dc: None, ..self.clone() }
    }

    /// Splits an input word into symbols. Words containing whitespace are split on it;
    /// otherwise every character is one symbol.
    pub fn parse_word(&self, w: &str) -> Result<Vec<Symbol>, ModelError> {
        let tokens: Vec<String> = if w.contains(char::is_whitespace) {
            w.split_whitespace().map(str::to_string).collect()
        } else {
            w.chars().map(String::from).collect()
        };
        tokens
            .into_iter()
            .map(|t| {
                self.input
                    .iter()
                    .position(|s| *s == t)
                    .map(|i| Symbol(i + 1))
                    .ok_or(ModelError::Alphabet(t))
            })
            .collect()
    }

    /// `¢ w $` as tape symbols.
    pub fn tape_string(&self, w: &str) -> Result<Vec<Symbol>, ModelError> {
        let mut tape = Vec::with_capacity(w.len() + 2);
        tape.push(CENT);
        tape.extend(self.parse_word(w)?);
        tape.push(self.dollar());
        Ok(tape)
    }
}

/// `θ` selector used while building: a single sign, or all three at once.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignSpec {
    One(CounterSign),
    Any,
}

impl SignSpec {
    pub fn signs(self) -> Vec<CounterSign> {
        match self {
            SignSpec::One(s) => vec![s],
            SignSpec::Any => CounterSign::ALL.to_vec(),
        }
    }
}

/// Incremental construction of a [`Machine`] by identifier.
#[derive(Debug, Clone)]
pub struct MachineBuilder {
    kind: MachineKind,
    counter_mode: CounterMode,
    simple: bool,
    states: Vec<String>,
    input: Vec<String>,
    registers: Vec<String>,
    initial_register: Option<usize>,
    accepting: BTreeSet<usize>,
    rejecting: BTreeSet<usize>,
    dc: BTreeMap<(usize, usize), Increment>,
    transitions: BTreeMap<(usize, usize, CounterSign), Vec<Target>>,
}

const RESERVED: [&str; 5] = ["CENT", "DOLLAR", "¢", "$", "*"];

fn check_ids(kind: &'static str, ids: &[String]) -> Result<(), ModelError> {
    let mut seen = BTreeSet::new();
    for id in ids {
        if id.is_empty() || id.contains(char::is_whitespace) {
            return Err(ModelError::Invalid(format!("{kind} identifier `{id}` must be a nonempty token")));
        }
        if !seen.insert(id) {
            return Err(ModelError::Duplicate { kind, name: id.clone() });
        }
    }
    Ok(())
}

impl MachineBuilder {
    pub fn new(kind: MachineKind) -> Self {
        MachineBuilder {
            kind,
            counter_mode: CounterMode::Checked,
            simple: false,
            states: Vec::new(),
            input: Vec::new(),
            registers: Vec::new(),
            initial_register: None,
            accepting: BTreeSet::new(),
            rejecting: BTreeSet::new(),
            dc: BTreeMap::new(),
            transitions: BTreeMap::new(),
        }
    }

    pub fn kind(&self) -> MachineKind {
        self.kind
    }

    pub fn counter_mode(&mut self, mode: CounterMode) -> &mut Self {
        self.counter_mode = mode;
        self
    }

    pub fn simple(&mut self, simple: bool) -> &mut Self {
        self.simple = simple;
        self
    }

    pub fn is_simple(&self) -> bool {
        self.simple
    }

    pub fn states<S: AsRef<str>>(&mut self, ids: &[S]) -> Result<&mut Self, ModelError> {
        let ids: Vec<String> = ids.iter().map(|s| s.as_ref().to_string()).collect();
        check_ids("state", &ids)?;
        self.states = ids;
        Ok(self)
    }

    pub fn input<S: AsRef<str>>(&mut self, ids: &[S]) -> Result<&mut Self, ModelError> {
        let ids: Vec<String> = ids.iter().map(|s| s.as_ref().to_string()).collect();
        check_ids("input symbol", &ids)?;
        if let Some(bad) = ids.iter().find(|s| RESERVED.contains(&s.as_str())) {
            return Err(ModelError::Invalid(format!("`{bad}` is reserved for the end-markers")));
        }
        self.input = ids;
        Ok(self)
    }

    pub fn registers<S: AsRef<str>>(&mut self, ids: &[S]) -> Result<&mut Self, ModelError> {
        if self.kind == MachineKind::Rtp1ca {
            return Err(ModelError::Invalid("probabilistic machines have no register".into()));
        }
        let ids: Vec<String> = ids.iter().map(|s| s.as_ref().to_string()).collect();
        check_ids("register symbol", &ids)?;
        self.registers = ids;
        Ok(self)
    }

    pub fn state(&self, name: &str) -> Result<usize, ModelError> {
        self.states
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| ModelError::Unknown { kind: "state", name: name.to_string() })
    }

    pub fn register(&self, name: &str) -> Result<usize, ModelError> {
        self.registers
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| ModelError::Unknown { kind: "register symbol", name: name.to_string() })
    }

    /// Tape symbol by name; `*` is not accepted here.
    pub fn symbol(&self, name: &str) -> Result<Symbol, ModelError> {
        match name {
            "CENT" | "¢" => Ok(CENT),
            "DOLLAR" | "$" => Ok(Symbol(self.input.len() + 1)),
            _ => self
                .input
                .iter()
                .position(|s| s == name)
                .map(|i| Symbol(i + 1))
                .ok_or_else(|| ModelError::Unknown { kind: "tape symbol", name: name.to_string() }),
        }
    }

    pub fn num_tape_symbols(&self) -> usize {
        self.input.len() + 2
    }

    pub fn initial_register(&mut self, name: &str) -> Result<&mut Self, ModelError> {
        self.initial_register = Some(self.register(name)?);
        Ok(self)
    }

    /// Accepting states (`rtp1ca`) or accepting register symbols.
    pub fn accept<S: AsRef<str>>(&mut self, ids: &[S]) -> Result<&mut Self, ModelError> {
        self.accepting = self.resolve_outcome_ids(ids)?;
        Ok(self)
    }

    pub fn reject<S: AsRef<str>>(&mut self, ids: &[S]) -> Result<&mut Self, ModelError> {
        if self.kind == MachineKind::Rtp1ca {
            return Err(ModelError::Invalid("probabilistic machines reject by not accepting".into()));
        }
        self.rejecting = self.resolve_outcome_ids(ids)?;
        Ok(self)
    }

    fn resolve_outcome_ids<S: AsRef<str>>(&self, ids: &[S]) -> Result<BTreeSet<usize>, ModelError> {
        ids.iter()
            .map(|id| {
                if self.kind == MachineKind::Rtp1ca {
                    self.state(id.as_ref())
                } else {
                    self.register(id.as_ref())
                }
            })
            .collect()
    }

    pub fn dc(&mut self, state: usize, sym: Option<Symbol>, inc: Increment) -> &mut Self {
        match sym {
            Some(s) => {
                self.dc.insert((state, s.0), inc);
            }
            None => {
                for s in 0..self.num_tape_symbols() {
                    self.dc.insert((state, s), inc);
                }
            }
        }
        self
    }

    /// Adds one target to `(q, σ, θ)` for every sign selected by `signs`.
    pub fn transition(&mut self, q: usize, sym: Symbol, signs: SignSpec, target: Target) -> Result<&mut Self, ModelError> {
        if q >= self.states.len() || target.to >= self.states.len() {
            return Err(ModelError::Invalid("transition refers to an undeclared state".into()));
        }
        if sym.0 >= self.num_tape_symbols() {
            return Err(ModelError::Invalid("transition refers to an undeclared tape symbol".into()));
        }
        match (self.kind, target.register) {
            (MachineKind::Rtp1ca, Some(_)) => return Err(ModelError::Invalid("probabilistic transitions write no register".into())),
            (MachineKind::Rtp1ca, None) => {
                if target.amp.im != 0.0 {
                    return Err(ModelError::Invalid("probabilities must be real".into()));
                }
            }
            (_, None) => return Err(ModelError::Invalid("quantum transitions must write a register symbol".into())),
            (_, Some(r)) if r >= self.registers.len() => {
                return Err(ModelError::Invalid("transition refers to an undeclared register symbol".into()))
            }
            _ => {}
        }
        match (self.kind == MachineKind::OneWay, target.head.is_some()) {
            (true, false) => return Err(ModelError::Invalid("one-way transitions need a head move".into())),
            (false, true) => return Err(ModelError::Invalid("only one-way transitions carry a head move".into())),
            _ => {}
        }
        if !(target.amp.re.is_finite() && target.amp.im.is_finite()) {
            return Err(ModelError::Invalid("amplitude is not finite".into()));
        }
        for sign in signs.signs() {
            let list = self.transitions.entry((q, sym.0, sign)).or_default();
            if list.iter().any(|t| t.same_slot(&target)) {
                return Err(ModelError::Duplicate {
                    kind: "transition",
                    name: format!("from `{}` to `{}`", self.states[q], self.states[target.to]),
                });
            }
            list.push(target.clone());
        }
        Ok(self)
    }

    pub fn build(&self) -> Result<Machine, ModelError> {
        if self.states.is_empty() {
            return Err(ModelError::Invalid("at least one state is required".into()));
        }
        let quantum = self.kind.is_quantum();
        if quantum {
            if self.registers.is_empty() {
                return Err(ModelError::Invalid("quantum machines need a register alphabet".into()));
            }
            let init = self
                .initial_register
                .ok_or_else(|| ModelError::Invalid("missing initial register symbol".into()))?;
            if let Some(both) = self.accepting.intersection(&self.rejecting).next() {
                return Err(ModelError::Invalid(format!(
                    "register symbol `{}` is both accepting and rejecting",
                    self.registers[*both]
                )));
            }
            match self.kind {
                MachineKind::Kq1ca => {
                    if self.registers.len() != 3 || self.accepting.len() != 1 || self.rejecting.len() != 1 {
                        return Err(ModelError::Invalid(
                            "kq1ca registers must be exactly one neutral, one accepting and one rejecting symbol".into(),
                        ));
                    }
                }
                MachineKind::OneWay if self.rejecting.is_empty() => {
                    return Err(ModelError::Invalid("1q1ca needs at least one rejecting register symbol".into()));
                }
                _ => {}
            }
            if matches!(self.kind, MachineKind::Kq1ca | MachineKind::OneWay)
                && (self.accepting.contains(&init) || self.rejecting.contains(&init))
            {
                return Err(ModelError::Invalid("initial register symbol must be neutral".into()));
            }
        }

        let n_tape = self.num_tape_symbols();
        let dc = if self.simple {
            let mut table = Vec::with_capacity(self.states.len() * n_tape);
            for q in 0..self.states.len() {
                for s in 0..n_tape {
                    let inc = self.dc.get(&(q, s)).copied().ok_or_else(|| {
                        ModelError::Invalid(format!("simple machine lacks dc for state `{}`", self.states[q]))
                    })?;
                    table.push(inc);
                }
            }
            Some(table)
        } else {
            if !self.dc.is_empty() {
                return Err(ModelError::Invalid("dc entries are only allowed on simple machines".into()));
            }
            None
        };

        let mut transitions = vec![Vec::new(); self.states.len() * n_tape * 3];
        for (&(q, s, sign), list) in &self.transitions {
            if let Some(dc) = &dc {
                if let Some(bad) = list.iter().find(|t| dc[t.to * n_tape + s] != t.inc) {
                    return Err(ModelError::Invalid(format!(
                        "increment {} into `{}` disagrees with its dc entry",
                        bad.inc, self.states[bad.to]
                    )));
                }
            }
            transitions[(q * n_tape + s) * 3 + sign.index()] = list.clone();
        }

        Ok(Machine {
            kind: self.kind,
            counter_mode: self.counter_mode,
            states: self.states.clone(),
            input: self.input.clone(),
            registers: self.registers.clone(),
            initial_register: if quantum { self.initial_register } else { None },
            accepting: self.accepting.clone(),
            rejecting: self.rejecting.clone(),
            dc,
            transitions,
        })
    }
}

/// `(state, head, counter)`. Real-time runs keep `head` equal to the step about to execute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Configuration {
    pub state: usize,
    /// 1-based position on `¢ w $`.
    pub head: usize,
    pub counter: i64,
}

/// A coherent superposition over configurations (not necessarily normalized).
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PureState {
    entries: BTreeMap<Configuration, Complex64>,
}

impl PureState {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn basis(c: Configuration) -> Self {
        let mut s = Self::new();
        s.entries.insert(c, Complex64::new(1.0, 0.0));
        s
    }

    pub fn add(&mut self, c: Configuration, a: Complex64) {
        *self.entries.entry(c).or_default() += a;
    }

    pub fn get(&self, c: &Configuration) -> Complex64 {
        self.entries.get(c).copied().unwrap_or_default()
    }

    /// Drops entries whose squared modulus is below `eps`.
    pub fn prune(&mut self, eps: f64) {
        self.entries.retain(|_, a| a.norm_sqr() >= eps);
    }

    pub fn norm_sqr(&self) -> f64 {
        self.entries.values().map(|a| a.norm_sqr()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Configuration, &Complex64)> {
        self.entries.iter()
    }
}

/// One decohered branch; only the register symbol written by the latest step is kept.
#[derive(Debug, Clone, PartialEq)]
pub struct Branch {
    pub last_register: usize,
    pub state: PureState,
}

/// Weighted collection of branches plus the probability already resolved by measurement.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Mixture {
    pub branches: Vec<Branch>,
    pub accept_mass: f64,
    pub reject_mass: f64,
}

impl Mixture {
    pub fn live_mass(&self) -> f64 {
        self.branches.iter().map(|b| b.state.norm_sqr()).sum()
    }

    pub fn total_mass(&self) -> f64 {
        self.accept_mass + self.reject_mass + self.live_mass()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunOutcome {
    pub accept: f64,
    pub reject: f64,
    pub unresolved: f64,
    pub steps: usize,
}

impl fmt::Display for RunOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ACCEPT {} REJECT {} UNRESOLVED {} STEPS {}",
            crate::numfmt::sig12(self.accept),
            crate::numfmt::sig12(self.reject),
            crate::numfmt::sig12(self.unresolved),
            self.steps
        )
    }
}

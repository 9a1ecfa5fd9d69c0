//! Classical and quantum one-counter automata: machine descriptions,
//! well-formedness checks, compilation between models, and simulation.

pub mod format;
pub mod model;
pub mod numfmt;
pub mod sim;
pub mod transform;
pub mod validate;
pub mod zoo;

pub use model::{Machine, MachineKind, RunOutcome};

//! Quantum Landau problem: exact operator algebra, truncated spectra, ground states and the Hall setup.

pub mod fock;
pub mod ground;
pub mod hall;
pub mod ladder;
pub mod phase;

pub use fock::{fock_matrix, spectrum, FockOperator, Level, Spectrum};
pub use ladder::{build_ladder, commutation_table, IdentityCheck, Ladder};
pub use phase::PhaseOperator;

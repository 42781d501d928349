//! Balanced loss-gain systems with Lorentz interaction.
//!
//! A system is `H = ΠᵀMΠ + V` with `Π = P + A·F(X)`. The crate builds the
//! standard representations, classifies parameter regions by the signature of
//! `M`, constructs the frame that removes the loss-gain terms, and covers the
//! two-dimensional Landau problem classically and quantum mechanically.

pub mod error;
pub mod frame;
pub mod landau_classical;
pub mod cli;
pub mod linalg;
pub mod quantum;
pub mod representations;
pub mod susy;
pub mod system;

pub use error::{Error, Result};

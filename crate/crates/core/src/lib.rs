//! Spectral data of Ricci-flat cones: indicial roots of the Lichnerowicz
//! Laplacian, convergence orders of conical ends, stability verdicts, and an
//! exact tensor-calculus oracle on flat ℝⁿ that checks the constructions.

pub mod error;
pub mod flat;
pub mod indicial;
pub mod link;
pub mod numeric;
pub mod rates;
pub mod report;
pub mod spectral;

pub use error::{Error, Result};

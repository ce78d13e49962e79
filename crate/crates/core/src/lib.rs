//! Optimal constants of smoothing estimates for the free Schrödinger and
//! Dirac equations.
//!
//! Both constants reduce to a one-dimensional supremum of an eigenvalue
//! profile `λ_k^{(d)}(r)` built from the spatial weight `w` and smoothing
//! function `ψ`. The crate evaluates these profiles by two independent
//! integral representations, searches their suprema, and compares the result
//! against the known closed forms.

pub mod closedform;
pub mod dirac;
pub mod lambda;
pub mod quadrature;
pub mod report;
pub mod specfun;
pub mod spinor2d;
pub mod suite;
pub mod weights;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("overflow: {0}")]
    Overflow(String),
    #[error("no convergence (best estimate {best:e}, error {error:e})")]
    NoConvergence { best: f64, error: f64 },
    #[error("divergent: {0}")]
    Divergent(String),
    #[error("unavailable: {0}")]
    Unavailable(String),
    #[error("hypothesis failed: {0}")]
    Hypothesis(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub use dirac::{optimal_constant, Equation, SearchConfig, SupResult};
pub use lambda::{lambda_k, Route};
pub use report::ConstantReport;
pub use specfun::AccuracyBudget;
pub use weights::WeightPair;

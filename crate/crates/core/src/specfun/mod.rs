//! Special functions used by the eigenvalue profiles.

mod bessel;
mod elliptic;
mod gamma;
mod legendre;
mod modified;
mod zeros;

pub use bessel::{bessel_j, hankel_modulus_phase, hankel_threshold};
pub use elliptic::elliptic_e;
pub use gamma::{gamma, ln_gamma};
pub use legendre::legendre_pkd;
pub use modified::{bessel_i, bessel_ik_product, bessel_k, bessel_k_scaled};
pub use zeros::{bessel_j_zeros, brent_root};

pub(crate) use bessel::{jv, mod_phase};
pub(crate) use legendre::pkd;
pub(crate) use zeros::phase_solve;
pub(crate) use gamma::gamma_pos;
pub(crate) use modified::{ik_log, ik_product};

use crate::{Error, Result};

/// Relative and absolute tolerances handed to every integrator.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct AccuracyBudget {
    pub rel_tol: f64,
    pub abs_tol: f64,
}

impl Default for AccuracyBudget {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: 1e-14,
        }
    }
}

impl AccuracyBudget {
    pub fn new(rel_tol: f64, abs_tol: f64) -> Result<Self> {
        if !(rel_tol > 0.0 && abs_tol > 0.0) {
            return Err(Error::Invalid(format!(
                "tolerances must be positive (rel {rel_tol}, abs {abs_tol})"
            )));
        }
        Ok(Self { rel_tol, abs_tol })
    }

    pub fn tighten(self, factor: f64) -> Self {
        Self {
            rel_tol: self.rel_tol * factor,
            abs_tol: self.abs_tol * factor,
        }
    }
}

//! Dirac profiles λ̃_k, the 2×2 reduction and the sup search for optimal constants.

mod matrix;
mod search;

use crate::lambda::{LambdaQuery, Route};
use crate::specfun::AccuracyBudget;
use crate::weights::WeightPair;
use crate::{Error, Result};

pub use matrix::{TwoByTwo, IDENTITY, SIGMA1, SIGMA3};
pub use search::{
    optimal_constant, sup_over_r, Attainment, Equation, KSup, RStar, SearchConfig, SupResult,
};

/// φ_m(r) = (r² + m²)^{1/2}
pub fn phi(r: f64, m: f64) -> f64 {
    r.hypot(m)
}

fn check_mass(r: f64, m: f64) -> Result<()> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::Domain(format!("r must be finite and > 0, got {r}")));
    }
    if !(m >= 0.0) || !m.is_finite() {
        return Err(Error::Domain(format!("mass must be finite and >= 0, got {m}")));
    }
    Ok(())
}

/// Q_ν(r) = ½(I + (ν/φ)(rσ₁ + mσ₃)), ν = ±1.
pub fn q_matrix(nu: i32, r: f64, m: f64) -> Result<TwoByTwo> {
    check_mass(r, m)?;
    if nu != 1 && nu != -1 {
        return Err(Error::Domain(format!("nu must be ±1, got {nu}")));
    }
    let c = nu as f64 / phi(r, m);
    Ok(IDENTITY.add(SIGMA1.scale(c * r).add(SIGMA3.scale(c * m))).scale(0.5))
}

/// 2 Σ_ν Q_ν diag(a, b) Q_ν.
pub fn project_pair(a: f64, b: f64, r: f64, m: f64) -> Result<TwoByTwo> {
    let lam = TwoByTwo::diag(a, b);
    let mut out = TwoByTwo::diag(0.0, 0.0);
    for nu in [1, -1] {
        let q = q_matrix(nu, r, m)?;
        out = out.add(q.mul(lam).mul(q));
    }
    Ok(out.scale(2.0))
}

/// (a+b)I + (m/φ²)(a−b)(rσ₁ + mσ₃)
pub fn reduced_pair(a: f64, b: f64, r: f64, m: f64) -> TwoByTwo {
    let c = m * (a - b) / (r * r + m * m);
    IDENTITY.scale(a + b).add(SIGMA1.scale(c * r)).add(SIGMA3.scale(c * m))
}

/// a + b + (m/φ)|a − b|, the top eigenvalue of [`reduced_pair`].
pub fn dirac_combine(a: f64, b: f64, r: f64, m: f64) -> f64 {
    a + b + m / phi(r, m) * (a - b).abs()
}

fn lambda_pair(k: usize, d: usize, r: f64, pair: &WeightPair, route: Route) -> Result<(f64, f64)> {
    let budget = AccuracyBudget::default();
    let a = LambdaQuery { k, d, r, pair, route }.eval(budget)?;
    let b = LambdaQuery { k: k + 1, d, r, pair, route }.eval(budget)?;
    Ok((a, b))
}

/// Λ̃_k(r) := 2 Σ_ν Q_ν(r) diag(λ_k, λ_{k+1}) Q_ν(r).
pub fn dirac_big_lambda(k: usize, d: usize, r: f64, m: f64, pair: &WeightPair) -> Result<TwoByTwo> {
    check_mass(r, m)?;
    let (a, b) = lambda_pair(k, d, r, pair, Route::Auto)?;
    project_pair(a, b, r, m)
}

/// λ̃_k(r) = λ_k + λ_{k+1} + (m/φ)|λ_k − λ_{k+1}|.
pub fn dirac_lambda_k(k: usize, d: usize, r: f64, m: f64, pair: &WeightPair) -> Result<f64> {
    check_mass(r, m)?;
    let (a, b) = lambda_pair(k, d, r, pair, Route::Auto)?;
    Ok(dirac_combine(a, b, r, m))
}

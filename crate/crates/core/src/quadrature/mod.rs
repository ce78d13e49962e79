//! Integration engines: finite adaptive, Jacobi-weighted on [−1, 1], and
//! semi-infinite Bessel integrals.

mod accel;
mod gk;
mod oscillatory;

pub use accel::wynn_epsilon;
pub use oscillatory::{
    detect_cutoff, integrate_bessel_single, integrate_bessel_tail, integrate_bessel_tail_with, Decay,
    TailHint,
};

use crate::specfun::AccuracyBudget;
use crate::{Error, Result};

const MAX_SPLITS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Smoothness {
    Smooth,
    EndpointSingular,
    OscillatoryDecaying,
}

/// An integrand together with what is known about its shape.
pub struct Integrand<'a> {
    pub evaluator: &'a (dyn Fn(f64) -> f64 + Sync),
    pub smoothness_hint: Smoothness,
}

impl Integrand<'_> {
    pub fn eval(&self, x: f64) -> f64 {
        (self.evaluator)(x)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

/// ∫_a^b f by globally adaptive 21-point Gauss–Kronrod.
pub fn integrate_finite<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, budget: AccuracyBudget) -> Result<QuadResult> {
    integrate_with_breakpoints(f, &[a, b], budget)
}

/// As [`integrate_finite`], with the interval pre-split at `points`
/// (sorted, first and last are the limits).
pub fn integrate_with_breakpoints<F: Fn(f64) -> f64>(f: F, points: &[f64], budget: AccuracyBudget) -> Result<QuadResult> {
    if points.len() < 2 || points.windows(2).any(|w| !(w[0] <= w[1])) || points[0] >= points[points.len() - 1] {
        return Err(Error::Domain("integration limits must be increasing and finite".into()));
    }
    if points.iter().any(|p| !p.is_finite()) {
        return Err(Error::Domain("integration limits must be finite".into()));
    }
    gk::adaptive(&f, points, budget, MAX_SPLITS + 20 * points.len())
}

/// Integrate an [`Integrand`]; the hint only affects how the interval is
/// seeded.
pub fn integrate(f: &Integrand<'_>, a: f64, b: f64, budget: AccuracyBudget) -> Result<QuadResult> {
    let pts: Vec<f64> = match f.smoothness_hint {
        Smoothness::Smooth => vec![a, b],
        // cluster panels at both ends
        Smoothness::EndpointSingular => {
            let h = b - a;
            vec![a, a + 1e-6 * h, a + 1e-3 * h, a + 0.5 * h, b - 1e-3 * h, b - 1e-6 * h, b]
        }
        Smoothness::OscillatoryDecaying => (0..=64).map(|j| a + (b - a) * j as f64 / 64.0).collect(),
    };
    integrate_with_breakpoints(|x| f.eval(x), &pts, budget)
}

/// ∫_{−1}^{1} f(t)(1−t²)^{(d−3)/2} dt, computed as ∫₀^π f(cos θ) sin^{d−2}θ dθ.
pub fn integrate_jacobi<F: Fn(f64) -> f64>(f: F, d: usize, budget: AccuracyBudget) -> Result<QuadResult> {
    if d < 2 {
        return Err(Error::Domain(format!("dimension must be >= 2, got {d}")));
    }
    let p = (d - 2) as i32;
    integrate_finite(|th: f64| f(th.cos()) * th.sin().powi(p), 0.0, std::f64::consts::PI, budget)
}

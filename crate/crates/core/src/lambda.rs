//! Schrödinger eigenvalue profiles λ_k^{(d)}(r) by the Bessel and Legendre routes.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::quadrature::{integrate_bessel_tail_with, integrate_with_breakpoints, Decay, TailHint};
use crate::specfun::{gamma_pos, pkd, AccuracyBudget};
use crate::weights::{WeightKind, WeightPair};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    Bessel,
    Legendre,
    /// Legendre when a closed-form transform is registered, else Bessel.
    /// Falls back to Bessel when the Legendre integral is badly conditioned.
    Auto,
}

impl Route {
    pub fn resolve(self, pair: &WeightPair, d: usize) -> Route {
        match self {
            Route::Auto if pair.has_fhat(d) => Route::Legendre,
            Route::Auto => Route::Bessel,
            r => r,
        }
    }
}

#[derive(Debug, Clone)]
pub struct LambdaQuery<'a> {
    pub k: usize,
    pub d: usize,
    pub r: f64,
    pub pair: &'a WeightPair,
    pub route: Route,
}

impl LambdaQuery<'_> {
    pub fn eval(&self, budget: AccuracyBudget) -> Result<f64> {
        check(self.d, self.r)?;
        let (k, d, r, pair) = (self.k, self.d, self.r, self.pair);
        match self.route.resolve(pair, d) {
            Route::Legendre if self.route == Route::Auto && k > 0 => {
                let v = legendre(k, d, r, pair, budget, false)?;
                // for small r the integral is O(r^{2k}) while the integrand is O(1)
                let loose = AccuracyBudget::new(1e-4, budget.abs_tol)?;
                let mass = legendre(k, d, r, pair, loose, true)?;
                if mass * f64::EPSILON > 1e-2 * budget.rel_tol * v.abs() {
                    if let Ok(b) = lambda_k_bessel(k, d, r, pair, budget) {
                        return Ok(b);
                    }
                }
                Ok(v)
            }
            Route::Legendre => lambda_k_legendre(k, d, r, pair, budget),
            _ => lambda_k_bessel(k, d, r, pair, budget),
        }
    }
}

fn check(d: usize, r: f64) -> Result<()> {
    if d < 2 {
        return Err(Error::Domain(format!("dimension must be >= 2, got {d}")));
    }
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::Domain(format!("r must be finite and > 0, got {r}")));
    }
    Ok(())
}

/// λ_k^{(d)}(r) with the default budget and route.
pub fn lambda_k(k: usize, d: usize, r: f64, pair: &WeightPair, route: Route) -> Result<f64> {
    LambdaQuery { k, d, r, pair, route }.eval(AccuracyBudget::default())
}

/// ½(2π)^d ψ²(r) ∫₀^∞ t w(t) J_{k+d/2−1}(rt)² dt.
pub fn lambda_k_bessel(k: usize, d: usize, r: f64, pair: &WeightPair, budget: AccuracyBudget) -> Result<f64> {
    check(d, r)?;
    let df = d as f64;
    let nu = k as f64 + 0.5 * df - 1.0;
    let pre = 0.5 * (2.0 * PI).powi(d as i32) * pair.psi_sq(r);
    if let WeightKind::TypeB { s } = pair.kind {
        if !(s > 1.0 && s < df) {
            return Err(Error::Domain(format!("typeB needs 1 < s < d = {d}, got {s}")));
        }
        // conditionally convergent near the ends of the range
        if s <= 1.1 || s >= df - 0.1 {
            return Ok(pre * r.powf(s - 2.0) * weber_schafheitlin_diag(s - 1.0, nu));
        }
        // scale-free weight: integrate on the natural scale 1/r
        let hint = TailHint { scale: 1.0 / r, decay: Some(Decay::Algebraic) };
        let q = integrate_bessel_tail_with(|t: f64| t.powf(1.0 - s), nu, r, budget, hint)?;
        return Ok(pre * q.value);
    }
    let hint = TailHint { scale: 1.0, decay: Some(pair.decay()) };
    let q = integrate_bessel_tail_with(|t: f64| t * pair.w(t), nu, r, budget, hint)?;
    Ok(pre * q.value)
}

// ∫₀^∞ t^{−λ} J_ν(t)² dt
fn weber_schafheitlin_diag(lambda: f64, nu: f64) -> f64 {
    gamma_pos(lambda) * gamma_pos(nu + 0.5 * (1.0 - lambda))
        / (2f64.powf(lambda) * gamma_pos(0.5 * (lambda + 1.0)).powi(2) * gamma_pos(nu + 0.5 * (lambda + 1.0)))
}

/// Funk–Hecke form, integrated over the angle α with t = cos α:
/// π^{(d−1)/2}/Γ((d−1)/2) r^{d−2} ψ²(r) ∫₀^π F̂(2r sin(α/2)) P_k^{(d)}(cos α) sin^{d−2}α dα.
pub fn lambda_k_legendre(k: usize, d: usize, r: f64, pair: &WeightPair, budget: AccuracyBudget) -> Result<f64> {
    legendre(k, d, r, pair, budget, false)
}

// with `absolute`, the same integral of |integrand|
fn legendre(k: usize, d: usize, r: f64, pair: &WeightPair, budget: AccuracyBudget, absolute: bool) -> Result<f64> {
    check(d, r)?;
    if !pair.has_fhat(d) {
        return Err(Error::Unavailable(format!(
            "no function-valued transform registered for {} in d = {d}",
            pair.id()
        )));
    }
    let p = (d - 2) as i32;
    let f = |a: f64| {
        let rho = 2.0 * r * (0.5 * a).sin();
        let v = pair.fhat_closed(d, rho).unwrap_or(f64::NAN) * pkd(k, d, a.cos()) * a.sin().powi(p);
        if absolute {
            v.abs()
        } else {
            v
        }
    };
    let mut pts = vec![0.0, PI];
    // the transform varies on the scale ρ ~ 1, i.e. α ~ 1/r
    let mut rho = 2f64.powi(-30);
    while rho < 2.0 * r {
        pts.push(2.0 * (rho / (2.0 * r)).asin());
        rho *= 2.0;
    }
    for &b in pair.fhat_breaks(d) {
        if b < 2.0 * r {
            pts.push(2.0 * (b / (2.0 * r)).asin());
        }
    }
    // P_k oscillates with period ~2π/k
    for j in 1..k {
        pts.push(PI * j as f64 / k as f64);
    }
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    let q = integrate_with_breakpoints(f, &pts, budget)?;
    let df = d as f64;
    let pre = if d == 2 {
        1.0 // π^{1/2}/Γ(1/2)
    } else {
        PI.powf(0.5 * (df - 1.0)) / gamma_pos(0.5 * (df - 1.0))
    };
    Ok(pre * r.powi(d as i32 - 2) * pair.psi_sq(r) * q.value)
}

/// λ_k sampled on a grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LambdaProfile {
    pub k: usize,
    pub d: usize,
    pub pair: String,
    pub route: Route,
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
    /// Largest relative disagreement between the two routes, when checked.
    pub cross_check: Option<f64>,
}

pub fn lambda_profile(
    k: usize,
    d: usize,
    pair: &WeightPair,
    grid: &[f64],
    route: Route,
    cross_check: bool,
) -> Result<LambdaProfile> {
    if grid.is_empty() || grid.iter().any(|&r| !(r > 0.0)) || grid.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::Invalid("grid must be positive and strictly increasing".into()));
    }
    let budget = AccuracyBudget::default();
    let used = route.resolve(pair, d);
    let values = grid
        .par_iter()
        .map(|&r| LambdaQuery { k, d, r, pair, route: used }.eval(budget))
        .collect::<Result<Vec<_>>>()?;
    let cross_check = if cross_check && pair.has_fhat(d) {
        let other = if used == Route::Legendre { Route::Bessel } else { Route::Legendre };
        let dev = grid
            .par_iter()
            .zip(values.par_iter())
            .map(|(&r, &v)| {
                let w = LambdaQuery { k, d, r, pair, route: other }.eval(budget)?;
                Ok((v - w).abs() / v.abs().max(w.abs()).max(f64::MIN_POSITIVE))
            })
            .collect::<Result<Vec<f64>>>()?;
        Some(dev.into_iter().fold(0.0, f64::max))
    } else {
        None
    };
    Ok(LambdaProfile { k, d, pair: pair.id(), route: used, grid: grid.to_vec(), values, cross_check })
}

/// Worst relative deviation from λ_{k1}^{(d1)} = (2π)^{d1−d2} λ_{k2}^{(d2)} on the grid.
pub fn dimension_shift_check(
    k1: usize,
    d1: usize,
    k2: usize,
    d2: usize,
    pair: &WeightPair,
    grid: &[f64],
) -> Result<f64> {
    if 2 * k1 + d1 != 2 * k2 + d2 {
        return Err(Error::Invalid(format!("2k+d differs: ({k1}, {d1}) vs ({k2}, {d2})")));
    }
    let factor = (2.0 * PI).powi(d1 as i32 - d2 as i32);
    let devs = grid
        .par_iter()
        .map(|&r| {
            let a = lambda_k(k1, d1, r, pair, Route::Auto)?;
            let b = factor * lambda_k(k2, d2, r, pair, Route::Auto)?;
            Ok((a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE))
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(devs.into_iter().fold(0.0, f64::max))
}

pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    let (a, b) = (lo.ln(), hi.ln());
    (0..n).map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{elliptic_e, ik_product};

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn type_a_in_three_dimensions() {
        let p = WeightPair::type_a(2.0).unwrap();
        for &r in &[0.05f64, 0.5, 1.0, 4.0, 20.0] {
            // I_{1/2}K_{1/2}(r) = (1 − e^{−2r})/(2r)
            let want = 0.5 * (2.0 * PI).powi(3) * (1.0 + r * r).sqrt() * (1.0 - (-2.0 * r).exp()) / (2.0 * r);
            for route in [Route::Bessel, Route::Legendre] {
                let got = lambda_k(0, 3, r, &p, route).unwrap();
                assert!(rel(got, want) < 1e-8, "r={r} {route:?} {got} {want}");
            }
        }
    }

    #[test]
    fn type_a_general_order() {
        let p = WeightPair::type_a(2.0).unwrap();
        for (k, d) in [(1, 3), (0, 4), (2, 5), (3, 2)] {
            let r = 0.8f64;
            let nu = k as f64 + 0.5 * d as f64 - 1.0;
            let want = 0.5 * (2.0 * PI).powi(d as i32) * (1.0 + r * r).sqrt() * ik_product(nu, r);
            let got = lambda_k(k, d, r, &p, Route::Bessel).unwrap();
            assert!(rel(got, want) < 1e-8, "k={k} d={d}");
        }
    }

    #[test]
    fn bessel_k0_in_two_dimensions() {
        let p = WeightPair::bessel_k0();
        let got = lambda_k(0, 2, 1.0, &p, Route::Legendre).unwrap();
        assert!(rel(got, 2.0 * PI * PI / 5f64.sqrt()) < 1e-10);
        for &r in &[0.1f64, 2.0, 30.0] {
            let want = 2.0 * PI * PI * r / (1.0 + 4.0 * r * r).sqrt();
            let got = lambda_k(0, 2, r, &p, Route::Bessel).unwrap();
            assert!(rel(got, want) < 1e-8, "r={r}");
        }
    }

    #[test]
    fn exponential_in_two_dimensions() {
        let p = WeightPair::exponential();
        for &r in &[0.2f64, 1.0, 5.0] {
            let m = (4.0 * r * r / (1.0 + 4.0 * r * r)).sqrt();
            let want = 4.0 * PI * elliptic_e(m).unwrap() / (1.0 / (r * r) + 4.0).sqrt();
            for route in [Route::Bessel, Route::Legendre] {
                let got = lambda_k(0, 2, r, &p, route).unwrap();
                assert!(rel(got, want) < 1e-8, "r={r} {route:?} {got} {want}");
            }
        }
    }

    #[test]
    fn type_b_levels() {
        for (d, s) in [(3usize, 1.5), (3, 2.5), (4, 2.0), (2, 1.05), (5, 3.0)] {
            let p = WeightPair::type_b(s).unwrap();
            for k in 0..3 {
                let df = d as f64;
                let ck = (2.0 * PI).powi(d as i32 - 1) * PI.sqrt() * gamma_pos(0.5 * (s - 1.0))
                    * gamma_pos(k as f64 + 0.5 * (df - s))
                    / (2.0 * gamma_pos(0.5 * s) * gamma_pos(k as f64 + 0.5 * (df + s) - 1.0));
                for &r in &[0.01, 1.0, 50.0] {
                    let got = lambda_k(k, d, r, &p, Route::Auto).unwrap();
                    assert!(rel(got, ck) < 1e-8, "d={d} s={s} k={k} r={r} {got} {ck}");
                }
            }
        }
        assert!(matches!(
            lambda_k_legendre(0, 3, 1.0, &WeightPair::type_b(1.5).unwrap(), AccuracyBudget::default()),
            Err(Error::Unavailable(_))
        ));
    }

    #[test]
    fn fejer_plateau() {
        let p = WeightPair::fejer();
        for &r in &[0.5, 0.7, 3.0, 100.0] {
            let got = lambda_k(0, 3, r, &p, Route::Legendre).unwrap();
            assert!(rel(got, 2.0 * PI.powi(3)) < 1e-9, "r={r} {got}");
        }
        let got = lambda_k(0, 3, 0.25, &p, Route::Legendre).unwrap();
        assert!(rel(got, PI.powi(3)) < 1e-9);
    }

    #[test]
    fn routes_agree() {
        for p in crate::weights::catalog() {
            for d in 2..=5 {
                if p.validate_for_dimension(d).is_err() {
                    continue;
                }
                for k in [0, 3] {
                    for &r in &[0.3, 3.0] {
                        let a = lambda_k(k, d, r, &p, Route::Bessel).unwrap();
                        let b = lambda_k(k, d, r, &p, Route::Legendre).unwrap();
                        assert!(rel(a, b) < 1e-7, "{} k={k} d={d} r={r} {a} {b}", p.id());
                    }
                }
            }
        }
    }

    #[test]
    fn dimension_shift() {
        let grid = log_grid(0.1, 10.0, 5);
        let a = WeightPair::type_a(2.0).unwrap();
        assert!(dimension_shift_check(1, 3, 0, 5, &a, &grid).unwrap() < 1e-8);
        let g = WeightPair::gaussian();
        assert!(dimension_shift_check(2, 2, 1, 4, &g, &grid).unwrap() < 1e-8);
        assert_eq!(dimension_shift_check(0, 4, 0, 4, &g, &grid).unwrap(), 0.0);
        assert!(dimension_shift_check(0, 4, 0, 5, &g, &grid).is_err());
    }

    #[test]
    fn profile_and_cross_check() {
        let grid = log_grid(0.1, 10.0, 9);
        let prof = lambda_profile(0, 2, &WeightPair::gaussian(), &grid, Route::Auto, true).unwrap();
        assert_eq!(prof.route, Route::Legendre);
        assert!(prof.cross_check.unwrap() < 1e-8);
        assert!(prof.values.iter().all(|&v| v > 0.0));
        assert!(lambda_profile(0, 2, &WeightPair::gaussian(), &[1.0, 0.5], Route::Auto, false).is_err());
        let flat = lambda_profile(1, 3, &WeightPair::type_b(2.0).unwrap(), &grid, Route::Auto, true).unwrap();
        assert_eq!(flat.cross_check, None);
        let (lo, hi) = flat.values.iter().fold((f64::MAX, 0.0f64), |(a, b), &v| (a.min(v), b.max(v)));
        assert!(hi - lo < 1e-9 * hi);
    }
}

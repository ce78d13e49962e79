//! Explicit optimal constants, used as ground truth for the numerical engine.
//!
//! All values are A or Ã themselves, i.e. already divided by (2π)^{d−1}.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::dirac::{optimal_constant, sup_over_r, Equation, RStar, SearchConfig};
use crate::specfun::{gamma, ik_product};
use crate::weights::{fhat_nonneg_all_dims, PsiSq, WeightKind, WeightPair};
use crate::{Error, Result};

/// What is known in closed form about a case.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Known {
    Value(f64),
    Bracket(f64, f64),
}

fn g(x: f64) -> f64 {
    gamma(x).expect("gamma argument in range")
}

// √π Γ((s−1)/2)/Γ(s/2) = 2‖(1+r²)^{−s/2}‖_{L¹}
fn twice_norm(s: f64) -> f64 {
    PI.sqrt() * g(0.5 * (s - 1.0)) / g(0.5 * s)
}

// sup_r of a profile given in closed form; boundary limits included
fn closed_sup(f: impl Fn(f64) -> f64 + Sync) -> Result<f64> {
    Ok(sup_over_r(|r| Ok(f(r)), 0, &SearchConfig::default())?.value)
}

/// Schrödinger constant for w = (1+r²)^{−1}, ψ² = (1+r²)^{1/2}.
pub fn type_a_schrodinger(d: usize) -> Result<f64> {
    match d {
        3 => Ok(PI),
        4 => Ok(PI * closed_sup(|r| (1.0 + r * r).sqrt() * ik_product(1.0, r))?),
        d if d >= 5 => Ok(0.5 * PI),
        _ => Err(Error::Domain(format!("type A with s = 2 needs d >= 3, got {d}"))),
    }
}

/// Dirac constant for w = (1+r²)^{−1}, ψ² = (1+r²)^{1/2}.
pub fn type_a_dirac(d: usize, m: f64) -> Result<f64> {
    if !(m >= 0.0) {
        return Err(Error::Domain(format!("mass must be >= 0, got {m}")));
    }
    match d {
        3 if m == 0.0 => Ok(4.0 * PI / 3.0),
        3 => Ok(2.0 * PI),
        4 if m == 0.0 => Ok(PI),
        4 => Ok(PI
            * closed_sup(|r| {
                let c = m / r.hypot(m);
                (1.0 + r * r).sqrt() * ((1.0 + c) * ik_product(1.0, r) + (1.0 - c) * ik_product(2.0, r))
            })?),
        d if d >= 5 => Ok(PI),
        _ => Err(Error::Domain(format!("type A with s = 2 needs d >= 3, got {d}"))),
    }
}

fn check_b(d: usize, s: f64) -> Result<()> {
    if d < 2 || !(s > 1.0 && s < d as f64) {
        return Err(Error::Domain(format!("type B needs d >= 2 and 1 < s < d, got d = {d}, s = {s}")));
    }
    Ok(())
}

/// c_k, the r-independent value of λ_k for w = r^{−s}, ψ² = r^{2−s}.
pub fn eigen_levels(d: usize, s: f64, k: usize) -> Result<f64> {
    check_b(d, s)?;
    let (df, kf) = (d as f64, k as f64);
    Ok((2.0 * PI).powi(d as i32 - 1) * PI.sqrt() * g(0.5 * (s - 1.0)) * g(kf + 0.5 * (df - s))
        / (2.0 * g(0.5 * s) * g(kf + 0.5 * (df + s) - 1.0)))
}

pub fn type_b(d: usize, s: f64, eq: Equation) -> Result<f64> {
    check_b(d, s)?;
    let df = d as f64;
    let a = PI.sqrt() * g(0.5 * (s - 1.0)) * g(0.5 * (df - s)) / (2.0 * g(0.5 * s) * g(0.5 * (df + s) - 1.0));
    Ok(match eq {
        Equation::Schrodinger => a,
        Equation::Dirac { m } if m == 0.0 => a * 2.0 * (df - 1.0) / (df + s - 2.0),
        Equation::Dirac { .. } => 2.0 * a,
    })
}

/// Constant for ψ² = r and F̂ ≥ 0: ‖w‖ (Schrödinger, d ≥ 3) or 2‖w‖ (Dirac,
/// d ≥ 3 any mass, or d = 2 massless).
pub fn type_c(d: usize, pair: &WeightPair, eq: Equation) -> Result<f64> {
    if pair.psi_sq != PsiSq::Power(1.0) {
        return Err(Error::Hypothesis(format!("ψ² must be r, got {}", pair.psi_sq.label())));
    }
    let covered = match eq {
        Equation::Schrodinger => d >= 3,
        Equation::Dirac { m } => d >= 3 || (d == 2 && m == 0.0),
    };
    if !covered {
        return Err(Error::Domain(format!("no closed form for {eq:?} in d = {d}")));
    }
    let norm = pair.l1_norm()?;
    if !(norm > 0.0) {
        return Err(Error::Hypothesis("w must be a non-zero integrable weight".into()));
    }
    if !fhat_nonneg_all_dims(pair, d, 0) {
        return Err(Error::Hypothesis(format!("F̂ of {} is negative somewhere in d = {d}", pair.id())));
    }
    Ok(match eq {
        Equation::Schrodinger => norm,
        Equation::Dirac { .. } => 2.0 * norm,
    })
}

/// Closed-form bracket for the Dirac constant with w = (1+r²)^{−s/2},
/// ψ² = (1+r²)^{1/2} in d = 2.
pub fn type_a2d_bounds(s: f64, m: f64) -> Result<(f64, f64)> {
    if !(s > 2.0) || !s.is_finite() {
        return Err(Error::Domain(format!("type A in d = 2 needs s > 2, got {s}")));
    }
    if !(m >= 0.0) {
        return Err(Error::Domain(format!("mass must be >= 0, got {m}")));
    }
    let small = PI / (s - 2.0);
    let large = twice_norm(s);
    Ok(if m > 0.0 {
        ((2.0 * small).max(large), 2.0 * (small + large))
    } else {
        // r ↓ 0 gives π/(s−2), r → ∞ gives 2‖w‖; the upper end is Ã₀'s own bound
        (small.max(large), small + large)
    })
}

/// Everything known about one case.
pub fn lookup(eq: Equation, d: usize, pair: &WeightPair) -> Result<Option<Known>> {
    match (&pair.kind, pair.psi_sq) {
        (WeightKind::TypeA { s }, PsiSq::Japanese) if d >= 3 => {
            if *s != 2.0 {
                return Ok(None);
            }
            Ok(Some(Known::Value(match eq {
                Equation::Schrodinger => type_a_schrodinger(d)?,
                Equation::Dirac { m } => type_a_dirac(d, m)?,
            })))
        }
        (WeightKind::TypeA { s }, PsiSq::Japanese) => match eq {
            Equation::Dirac { m } => {
                let (lo, hi) = type_a2d_bounds(*s, m)?;
                Ok(Some(Known::Bracket(lo, hi)))
            }
            // A ≥ Ã_m/2 for every m, and A ≤ Ã₀
            Equation::Schrodinger => {
                let (lo, _) = type_a2d_bounds(*s, 1.0)?;
                let (_, hi) = type_a2d_bounds(*s, 0.0)?;
                Ok(Some(Known::Bracket(0.5 * lo, hi)))
            }
        },
        (WeightKind::TypeB { s }, _) => Ok(Some(Known::Value(type_b(d, *s, eq)?))),
        (_, PsiSq::Power(p)) if p == 1.0 => match type_c(d, pair, eq) {
            Ok(v) => Ok(Some(Known::Value(v))),
            Err(Error::Domain(_)) if d == 2 => {
                let n = pair.l1_norm()?;
                Ok(Some(Known::Bracket(n, 2.0 * n)))
            }
            Err(e) => Err(e),
        },
        _ => Ok(None),
    }
}

/// Reference sup ratios λ₀/(2π‖w‖) and their locations for d = 2, ψ² = r.
pub fn reference_ratio_2d(pair: &WeightPair) -> Option<(f64, Option<f64>)> {
    match pair.kind {
        WeightKind::Gaussian => Some((1.17516, Some(0.888807))),
        WeightKind::TypeC { s } if s == 2.0 => Some((1.06673, Some(1.07503))),
        WeightKind::Exponential => Some((1.05481, Some(1.08983))),
        WeightKind::BesselK0 => Some((1.0, None)),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TwoDFacts {
    pub pair: String,
    pub norm: f64,
    pub constant: f64,
    /// A/‖w‖, the sup of λ₀/(2π‖w‖).
    pub ratio: f64,
    pub r_star: RStar,
    pub reference: Option<(f64, Option<f64>)>,
    /// ‖w‖ ≤ A ≤ 2‖w‖
    pub sandwich_holds: bool,
}

/// The Schrödinger constant in d = 2 with ψ² = r against ‖w‖.
pub fn schrodinger_2d_typec_facts(pair: &WeightPair, cfg: &SearchConfig) -> Result<TwoDFacts> {
    if pair.psi_sq != PsiSq::Power(1.0) {
        return Err(Error::Hypothesis("ψ² must be r".into()));
    }
    if !fhat_nonneg_all_dims(pair, 2, 0) {
        return Err(Error::Hypothesis(format!("F̂ of {} is negative somewhere in d = 2", pair.id())));
    }
    let norm = pair.l1_norm()?;
    let rep = optimal_constant(2, Equation::Schrodinger, pair, cfg)?;
    let best = rep
        .k_profile
        .iter()
        .fold(&rep.k_profile[0], |b, s| if s.value > b.value { s } else { b });
    let ratio = rep.computed / norm;
    Ok(TwoDFacts {
        pair: pair.id(),
        norm,
        constant: rep.computed,
        ratio,
        r_star: best.r_star,
        reference: reference_ratio_2d(pair),
        sandwich_holds: ratio >= 1.0 - 1e-9 && ratio <= 2.0 + 1e-9,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn type_a_values() {
        assert_eq!(type_a_schrodinger(3).unwrap(), PI);
        assert_eq!(type_a_schrodinger(7).unwrap(), PI / 2.0);
        let a4 = type_a_schrodinger(4).unwrap() / PI;
        assert!((a4 - 0.50239).abs() < 1e-5, "{a4}");
        assert!(type_a_schrodinger(2).is_err());
        assert_eq!(type_a_dirac(3, 0.0).unwrap(), 4.0 * PI / 3.0);
        assert_eq!(type_a_dirac(5, 2.0).unwrap(), PI);
        let d41 = type_a_dirac(4, 1.0).unwrap();
        assert!(d41 >= PI && d41 <= 2.0 * type_a_schrodinger(4).unwrap(), "{d41}");
        // the massless reduced expression tends to 1 at infinity
        assert!((type_a_dirac(4, 1e-12).unwrap() - PI).abs() < 1e-6);
    }

    #[test]
    fn type_b_values() {
        assert!((type_b(3, 2.0, Equation::Schrodinger).unwrap() - PI).abs() < 1e-14);
        assert!((type_b(3, 2.0, Equation::Dirac { m: 0.0 }).unwrap() - 4.0 * PI / 3.0).abs() < 1e-14);
        assert!((type_b(3, 2.0, Equation::Dirac { m: 1.0 }).unwrap() - 2.0 * PI).abs() < 1e-14);
        assert!(type_b(3, 3.0, Equation::Schrodinger).is_err());
        for (d, s) in [(3usize, 1.5), (5, 3.0), (4, 2.0)] {
            let c0 = eigen_levels(d, s, 0).unwrap();
            assert!((c0 / (2.0 * PI).powi(d as i32 - 1) - type_b(d, s, Equation::Schrodinger).unwrap()).abs() < 1e-14);
            for k in 0..10 {
                let ratio = eigen_levels(d, s, k + 1).unwrap() / eigen_levels(d, s, k).unwrap();
                let df = d as f64;
                let want = (k as f64 + 0.5 * (df - s)) / (k as f64 + 0.5 * (df + s) - 1.0);
                assert!((ratio - want).abs() < 1e-13 && ratio < 1.0);
            }
        }
        // the Dirac/Schrödinger ratio tends to 1 as s ↑ d
        let r = type_b(4, 3.999, Equation::Dirac { m: 0.0 }).unwrap() / type_b(4, 3.999, Equation::Schrodinger).unwrap();
        assert!((r - 1.0).abs() < 1e-3);
    }

    #[test]
    fn type_c_values() {
        let c = WeightPair::type_c(2.0).unwrap();
        assert!((type_c(3, &c, Equation::Dirac { m: 0.3 }).unwrap() - PI).abs() < 1e-14);
        assert!((type_c(2, &WeightPair::bessel_k0(), Equation::Dirac { m: 0.0 }).unwrap() - PI).abs() < 1e-14);
        assert!((type_c(2, &WeightPair::exponential(), Equation::Dirac { m: 0.0 }).unwrap() - 2.0).abs() < 1e-14);
        assert!(type_c(2, &WeightPair::exponential(), Equation::Dirac { m: 1.0 }).is_err());
        assert!(matches!(
            type_c(3, &WeightPair::type_a(2.0).unwrap(), Equation::Schrodinger),
            Err(Error::Hypothesis(_))
        ));
        // 2‖w‖ for (1+r²)^{−3/2} is 2
        assert!((twice_norm(3.0) - 2.0).abs() < 1e-14);
    }

    #[test]
    fn a2d_bounds() {
        let (lo, _) = type_a2d_bounds(4.0, 1.0).unwrap();
        assert!((lo - PI).abs() < 1e-14);
        let s = 2.0 + 1e-6;
        let (lo, _) = type_a2d_bounds(s, 1.0).unwrap();
        assert!(((s - 2.0) * lo - 2.0 * PI).abs() < 1e-5);
        let (lo0, hi0) = type_a2d_bounds(2.5, 0.0).unwrap();
        let (lo1, hi1) = type_a2d_bounds(2.5, 1.0).unwrap();
        assert!(lo0 <= hi0 && lo1 <= hi1 && hi1 == 2.0 * hi0);
        assert!(type_a2d_bounds(2.0, 1.0).is_err());
    }

    #[test]
    fn lookup_dispatch() {
        let a = WeightPair::type_a(2.0).unwrap();
        assert_eq!(lookup(Equation::Schrodinger, 3, &a).unwrap(), Some(Known::Value(PI)));
        assert!(matches!(lookup(Equation::Dirac { m: 1.0 }, 2, &WeightPair::type_a(2.5).unwrap()).unwrap(), Some(Known::Bracket(..))));
        assert!(matches!(lookup(Equation::Schrodinger, 2, &WeightPair::gaussian()).unwrap(), Some(Known::Bracket(..))));
        assert_eq!(lookup(Equation::Schrodinger, 3, &WeightPair::type_a(3.0).unwrap()).unwrap(), None);
    }
}

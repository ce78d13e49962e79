use std::f64::consts::PI;

use super::accel::wynn_epsilon;
use super::gk::{adaptive, qk21};
use super::QuadResult;
use crate::specfun::{bessel_j_zeros, hankel_threshold, jv, AccuracyBudget};
use crate::specfun::{mod_phase, phase_solve};
use crate::{Error, Result};

const MAX_PANELS: usize = 200_000;
const MAX_TAIL_TERMS: usize = 4_000;
// beyond this many radians of J_ν² on a finite support, switch to the asymptotic split
const LARGE_X: f64 = 4e4;

/// How the integrand g decays at infinity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Decay {
    /// Negligible beyond the given t.
    Cutoff(f64),
    /// Eventually monotone, algebraic decay.
    Algebraic,
}

/// Extra knowledge about g for the semi-infinite Bessel integrals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailHint {
    /// Length scale on which g varies.
    pub scale: f64,
    /// Decay class; detected by sampling when absent.
    pub decay: Option<Decay>,
}

impl Default for TailHint {
    fn default() -> Self {
        Self { scale: 1.0, decay: None }
    }
}

/// ∫₀^∞ g(t) J_ν(rt)² dt.
pub fn integrate_bessel_tail<G>(g: G, nu: f64, r: f64, budget: AccuracyBudget) -> Result<QuadResult>
where
    G: Fn(f64) -> f64,
{
    integrate_bessel_tail_with(g, nu, r, budget, TailHint::default())
}

pub fn integrate_bessel_tail_with<G>(
    g: G,
    nu: f64,
    r: f64,
    budget: AccuracyBudget,
    hint: TailHint,
) -> Result<QuadResult>
where
    G: Fn(f64) -> f64,
{
    bessel_power_integral(&g, nu, r, budget, hint, 2)
}

/// ∫₀^∞ g(t) J_ν(ρt) dt, the kernel of a Hankel transform.
pub fn integrate_bessel_single<G>(
    g: G,
    nu: f64,
    rho: f64,
    budget: AccuracyBudget,
    hint: TailHint,
) -> Result<QuadResult>
where
    G: Fn(f64) -> f64,
{
    bessel_power_integral(&g, nu, rho, budget, hint, 1)
}

/// Largest t beyond the peak where |g| has dropped below 1e-18 of its peak
/// and stays there; None for algebraic decay.
pub fn detect_cutoff<G: Fn(f64) -> f64 + ?Sized>(g: &G, scale: f64) -> Option<f64> {
    let ts: Vec<f64> = (-40..=100).map(|j| scale * 2f64.powf(j as f64 / 4.0)).collect();
    let vals: Vec<f64> = ts.iter().map(|&t| g(t).abs()).collect();
    let (imax, peak) = vals
        .iter()
        .enumerate()
        .fold((0, 0.0), |acc, (i, &v)| if v > acc.1 { (i, v) } else { acc });
    if peak == 0.0 {
        return Some(scale);
    }
    let small = 1e-18 * peak;
    for i in imax..ts.len() {
        if vals[i..].iter().all(|&v| v <= small) {
            return Some(ts[i]);
        }
    }
    None
}

fn oscillation_points(nu: f64, xmax: f64) -> Result<Vec<f64>> {
    let thr = hankel_threshold(nu);
    let mut pts = Vec::new();
    if xmax > 0.0 {
        let mut n = 8;
        loop {
            let zs = bessel_j_zeros(nu, n)?;
            let last = *zs.last().unwrap();
            if last >= xmax.min(thr) || n > MAX_PANELS {
                pts.extend(zs.into_iter().filter(|&z| z < xmax.min(thr)));
                break;
            }
            n *= 2;
        }
    }
    if xmax > thr {
        let count = ((xmax - thr) / PI).ceil() as usize;
        if count > MAX_PANELS {
            return Err(Error::Unavailable(format!(
                "{count} oscillations on the finite part exceed the panel budget"
            )));
        }
        for j in 0..count {
            pts.push(thr + j as f64 * PI);
        }
    }
    Ok(pts)
}

fn finite_points(nu: f64, r: f64, t_end: f64, scale: f64) -> Result<Vec<f64>> {
    let mut pts = vec![0.0, t_end];
    for z in oscillation_points(nu, r * t_end)? {
        pts.push(z / r);
    }
    for f in [1e-2, 1e-1, 1.0, 10.0] {
        pts.push(f * scale);
    }
    pts.retain(|&t| (0.0..=t_end).contains(&t));
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    Ok(pts)
}

fn bessel_power_integral<G: Fn(f64) -> f64 + ?Sized>(
    g: &G,
    nu: f64,
    r: f64,
    budget: AccuracyBudget,
    hint: TailHint,
    power: i32,
) -> Result<QuadResult> {
    if !(nu >= 0.0) || !(r > 0.0) || !r.is_finite() {
        return Err(Error::Domain(format!("need nu >= 0 and r > 0, got nu={nu}, r={r}")));
    }
    let scale = hint.scale;
    let decay = match hint.decay {
        Some(d) => d,
        None => detect_cutoff(g, scale).map_or(Decay::Algebraic, Decay::Cutoff),
    };
    let jp = |t: f64| {
        let j = jv(nu, r * t);
        if power == 2 {
            j * j
        } else {
            j
        }
    };
    let inner = budget.tighten(0.1);
    if let Decay::Cutoff(t_end) = decay {
        if power == 2 && r * t_end > LARGE_X && hankel_threshold(nu) < 0.25 * LARGE_X {
            return cutoff_asymptotic(g, nu, r, t_end, scale, inner);
        }
        let pts = finite_points(nu, r, t_end, scale)?;
        let f = |t: f64| g(t) * jp(t);
        return adaptive(&f, &pts, inner, 20 * pts.len() + 2_000);
    }

    // the first phase point beyond the Hankel threshold and the weight scale
    let mult = power as f64;
    let thr = hankel_threshold(nu);
    let x_start = thr.max((50.0 * scale * r).min(2e4));
    let (_, th) = mod_phase(nu, x_start);
    let mut n = (mult * th / PI - 0.5).ceil();
    let mut x0 = phase_solve(nu, (n + 0.5) * PI / mult, x_start)?;
    if x0 < thr {
        n += 1.0;
        x0 = phase_solve(nu, (n + 0.5) * PI / mult, x_start)?;
    }
    let t0 = x0 / r;

    let pts = finite_points(nu, r, t0, scale)?;
    let f = |t: f64| g(t) * jp(t);
    let head = adaptive(&f, &pts, inner, 20 * pts.len() + 2_000)?;
    let mut value = head.value;
    let mut error = head.error_estimate;
    let mut evals = head.evaluations;

    if power == 2 {
        let mean = mean_tail(g, nu, r, t0, inner)?;
        value += mean.value;
        error += mean.error_estimate;
        evals += mean.evaluations;
    }

    let tol = 0.1 * budget.abs_tol.max(budget.rel_tol * value.abs());
    let osc = oscillatory_tail(g, nu, r, n, mult, tol)?;
    value += osc.value;
    error += osc.error_estimate;
    evals += osc.evaluations;
    Ok(QuadResult { value, error_estimate: error, evaluations: evals })
}

// ∫₀^{t_end} g J_ν(rt)² dt for large r·t_end. Beyond t0 write J² = ½M²(1 + cos 2θ):
// the mean part is smooth, and with u = 2θ(rt) the rest is ∫ H(t(u)) cos u du,
// H = (π/8) t g M⁴, which two integrations by parts reduce to end-point terms.
fn cutoff_asymptotic<G: Fn(f64) -> f64 + ?Sized>(
    g: &G,
    nu: f64,
    r: f64,
    t_end: f64,
    scale: f64,
    budget: AccuracyBudget,
) -> Result<QuadResult> {
    let t0 = 0.5 * LARGE_X / r;
    let pts = finite_points(nu, r, t0, scale)?;
    let f = |t: f64| {
        let j = jv(nu, r * t);
        g(t) * j * j
    };
    let head = adaptive(&f, &pts, budget, 20 * pts.len() + 2_000)?;

    let mean_f = |t: f64| 0.5 * g(t) * mod_phase(nu, r * t).0;
    let mut mpts = vec![t0, t_end];
    for f in [1e-2, 1e-1, 1.0, 10.0] {
        if f * scale > t0 && f * scale < t_end {
            mpts.push(f * scale);
        }
    }
    mpts.sort_by(f64::total_cmp);
    let mean = adaptive(&mean_f, &mpts, budget, 4_000)?;

    let h = |t: f64| 0.125 * PI * t * g(t) * mod_phase(nu, r * t).0.powi(2);
    // dH/du = H'(t) · π t M²/4, with one-sided differences staying inside the support
    let ends = |t: f64, side: f64| {
        let (m2, th) = mod_phase(nu, r * t);
        let dt = 1e-5 * t;
        let dh = side * (3.0 * h(t) - 4.0 * h(t - side * dt) + h(t - 2.0 * side * dt)) / (2.0 * dt);
        let hu = dh * 0.25 * PI * t * m2;
        (h(t) * (2.0 * th).sin() + hu * (2.0 * th).cos(), hu.abs())
    };
    let (b, eb) = ends(t_end, 1.0);
    let (a, ea) = ends(t0, -1.0);
    Ok(QuadResult {
        value: head.value + mean.value + b - a,
        error_estimate: head.error_estimate + mean.error_estimate + ea + eb,
        evaluations: head.evaluations + mean.evaluations + 10,
    })
}

// ½ ∫_{t0}^∞ g(t) M²(rt) dt over t = t0 e^v.
fn mean_tail<G: Fn(f64) -> f64 + ?Sized>(
    g: &G,
    nu: f64,
    r: f64,
    t0: f64,
    budget: AccuracyBudget,
) -> Result<QuadResult> {
    let h = |v: f64| {
        let t = t0 * v.exp();
        let (m2, _) = mod_phase(nu, r * t);
        0.5 * t * g(t) * m2
    };
    let mut sum = 0.0;
    let mut err = 0.0;
    let mut evals = 0;
    let mut a = 0.0;
    let mut b = 0.5;
    loop {
        let q = adaptive(&h, &[a, b], budget, 2_000)?;
        sum += q.value;
        err += q.error_estimate;
        evals += q.evaluations;
        if b >= 4.0 && q.value.abs() <= 1e-3 * budget.rel_tol * sum.abs().max(budget.abs_tol) {
            break;
        }
        if b > 700.0 {
            return Err(Error::Divergent("weight decays too slowly for the Bessel integral".into()));
        }
        a = b;
        b *= 2.0;
    }
    Ok(QuadResult { value: sum, error_estimate: err, evaluations: evals })
}

// Σ over half-periods of the oscillating remainder, accelerated.
fn oscillatory_tail<G: Fn(f64) -> f64 + ?Sized>(
    g: &G,
    nu: f64,
    r: f64,
    n0: f64,
    mult: f64,
    tol: f64,
) -> Result<QuadResult> {
    let power = mult as i32;
    let f = |t: f64| {
        let (m2, th) = mod_phase(nu, r * t);
        if power == 2 {
            0.5 * g(t) * m2 * (2.0 * th).cos()
        } else {
            g(t) * m2.sqrt() * th.cos()
        }
    };
    let mut x_prev = phase_solve(nu, (n0 + 0.5) * PI / mult, hankel_threshold(nu))?;
    let mut partial = Vec::new();
    let mut amps = Vec::new();
    let mut sum = 0.0;
    let mut evals = 0;
    let mut last_est = f64::NAN;
    let mut stable = 0;
    for j in 1..=MAX_TAIL_TERMS {
        let target = (n0 + j as f64 + 0.5) * PI / mult;
        let x_next = phase_solve(nu, target, x_prev + PI / mult)?;
        let p = qk21(&f, x_prev / r, x_next / r);
        evals += 21;
        sum += p.value;
        partial.push(sum);
        amps.push(p.value.abs());
        x_prev = x_next;
        if j < 8 {
            continue;
        }
        if amps[j - 1] >= amps[j / 2 - 1] {
            return Err(Error::Divergent("oscillating tail does not decay".into()));
        }
        let window = &partial[partial.len().saturating_sub(40)..];
        let (est, e) = wynn_epsilon(window);
        if (est - last_est).abs() <= tol && e <= tol {
            stable += 1;
            if stable >= 2 {
                return Ok(QuadResult { value: est, error_estimate: e.max((est - last_est).abs()), evaluations: evals });
            }
        } else {
            stable = 0;
        }
        last_est = est;
        // plain summation has converged on its own
        if p.value.abs() <= 0.01 * tol {
            return Ok(QuadResult { value: sum, error_estimate: p.value.abs(), evaluations: evals });
        }
    }
    let window = &partial[partial.len() - 40..];
    let (est, e) = wynn_epsilon(window);
    Err(Error::NoConvergence { best: est, error: e })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{gamma, ik_product};

    fn budget() -> AccuracyBudget {
        AccuracyBudget::default()
    }

    #[test]
    fn lemma_identity_examples() {
        for mu in [0.0, 1.0, 2.0] {
            let q = integrate_bessel_tail(|t: f64| t / (1.0 + t * t), mu, 1.0, budget()).unwrap();
            let want = ik_product(mu, 1.0);
            assert!((q.value - want).abs() < 1e-7 * want, "mu={mu} {} {want}", q.value);
        }
    }

    #[test]
    fn gaussian_example() {
        let q = integrate_bessel_tail(|t: f64| t * (-0.5 * t * t).exp(), 0.0, 1.0, budget()).unwrap();
        let want = (-1.0f64).exp() * crate::specfun::bessel_i(0.0, 1.0).unwrap();
        assert!((q.value - want).abs() < 1e-8 * want);
    }

    #[test]
    fn compact_support_at_large_r() {
        // ∫₀^L t J_ν(rt)² dt = (L²/2)(J_ν(x)² − J_{ν−1}(x) J_{ν+1}(x)), x = rL; mpmath, 40 digits
        let l = 1.5;
        let hint = TailHint { scale: 1.0, decay: Some(Decay::Cutoff(l)) };
        let table = [
            (0.5, 1e2, 0.0047905599011373858),
            (0.5, 3e4, 1.5915554338446766e-5),
            (0.5, 1e6, 4.7746496909172122e-7),
            (0.5, 1e9, 4.774648291185993e-10),
            (1.0, 1e2, 0.0047742965857261657),
            (1.0, 3e4, 1.5915660645628382e-5),
            (1.0, 1e6, 4.7746490531364191e-7),
            (1.0, 1e9, 4.7746482925011136e-10),
            (2.5, 1e2, 0.0047899288333991987),
            (2.5, 3e4, 1.5915554292689449e-5),
            (2.5, 1e6, 4.7746496909078045e-7),
            (2.5, 1e9, 4.774648291185993e-10),
        ];
        for (nu, r, want) in table {
            let g = |t: f64| if t <= l { t } else { 0.0 };
            let q = integrate_bessel_tail_with(g, nu, r, budget(), hint).unwrap();
            assert!((q.value - want).abs() < 1e-9 * want, "nu={nu} r={r}: {} vs {want}", q.value);
        }
    }

    #[test]
    fn truncated_gaussian_at_large_r() {
        // e^{−r²} I_ν(r²) ~ (2πx)^{−1/2}(1 − (4ν²−1)/(8x)), x = r²
        let hint = TailHint { scale: 1.0, decay: Some(Decay::Cutoff(12.0)) };
        for r in [1e4, 1e6] {
            let x: f64 = r * r;
            let want = (1.0 - (4.0 * 0.25 - 1.0) / (8.0 * x)) / (2.0 * PI * x).sqrt();
            let q = integrate_bessel_tail_with(|t: f64| t * (-0.5 * t * t).exp(), 0.5, r, budget(), hint).unwrap();
            assert!((q.value - want).abs() < 1e-9 * want, "r={r}: {} vs {want}", q.value);
        }
    }

    // ∫ t^{-λ} J_ν(at) J_μ(at) dt
    fn weber_schafheitlin(lambda: f64, nu: f64, mu: f64, a: f64) -> f64 {
        let g = |x| gamma(x).unwrap();
        a.powf(lambda - 1.0) * g(lambda) * g((nu + mu - lambda + 1.0) / 2.0)
            / (2f64.powf(lambda)
                * g((-nu + mu + lambda + 1.0) / 2.0)
                * g((nu + mu + lambda + 1.0) / 2.0)
                * g((nu - mu + lambda + 1.0) / 2.0))
    }

    #[test]
    fn power_weight_against_weber_schafheitlin() {
        let s = 2.0;
        let q = integrate_bessel_tail(|t: f64| t.powf(1.0 - s), 0.5, 1.0, budget()).unwrap();
        let want = weber_schafheitlin(s - 1.0, 0.5, 0.5, 1.0);
        assert!((want - 1.0).abs() < 1e-14); // = Γ(1)Γ(1/2)/(2Γ(1)Γ(3/2)Γ(1))
        assert!((q.value - want).abs() < 1e-7 * want, "{} {want}", q.value);
        for (s, nu, r) in [(1.5, 0.5, 2.0), (2.5, 1.5, 0.7), (1.8, 1.0, 1.0)] {
            let q = integrate_bessel_tail(|t: f64| t.powf(1.0 - s), nu, r, budget()).unwrap();
            let want = weber_schafheitlin(s - 1.0, nu, nu, r);
            assert!((q.value - want).abs() < 1e-7 * want, "s={s} {} {want}", q.value);
        }
    }

    #[test]
    fn hankel_transform_of_gaussian() {
        // ∫ t e^{-t²/2} J_0(ρt) dt = e^{-ρ²/2}
        for rho in [0.1, 1.0, 3.0] {
            let q = integrate_bessel_single(|t: f64| t * (-0.5 * t * t).exp(), 0.0, rho, budget(), TailHint::default())
                .unwrap();
            assert!((q.value - (-0.5 * rho * rho).exp()).abs() < 1e-10);
        }
        // ∫ t (1+t²)^{-3/2} J_0(ρt) dt = e^{-ρ}
        for rho in [0.5, 2.0] {
            let q = integrate_bessel_single(|t: f64| t * (1.0 + t * t).powf(-1.5), 0.0, rho, budget(), TailHint::default())
                .unwrap();
            assert!((q.value - (-rho).exp()).abs() < 1e-9, "{}", q.value);
        }
    }

    #[test]
    fn non_decaying_hankel_kernel_is_divergent() {
        let r = integrate_bessel_single(|t: f64| t, 0.0, 1.0, budget(), TailHint::default());
        assert!(matches!(r, Err(Error::Divergent(_))), "{r:?}");
    }

    #[test]
    fn cutoff_detection() {
        assert!(detect_cutoff(&|t: f64| t * (-0.5 * t * t).exp(), 1.0).is_some());
        assert!(detect_cutoff(&|t: f64| t / (1.0 + t * t), 1.0).is_none());
    }

    #[test]
    fn halving_tolerance_is_stable() {
        let g = |t: f64| t * (1.0 + t * t).powf(-1.25);
        let b1 = AccuracyBudget::new(1e-8, 1e-14).unwrap();
        let b2 = AccuracyBudget::new(5e-9, 1e-14).unwrap();
        let q1 = integrate_bessel_tail(g, 1.0, 1.3, b1).unwrap();
        let q2 = integrate_bessel_tail(g, 1.0, 1.3, b2).unwrap();
        assert!((q1.value - q2.value).abs() <= q1.error_estimate.max(1e-14));
    }
}

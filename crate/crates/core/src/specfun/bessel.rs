use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use super::gamma::{gamma_pos, ln_gamma_pos};
use crate::{Error, Result};

const EPS: f64 = 1e-16;
const FPMIN: f64 = 1e-30;
const MAXIT: usize = 1_000_000;

/// Smallest argument at which the Hankel expansion is used for order `nu`.
pub fn hankel_threshold(nu: f64) -> f64 {
    (nu * nu).max(25.0)
}

/// J_ν(x) for ν ≥ 0, x ≥ 0.
pub fn bessel_j(nu: f64, x: f64) -> Result<f64> {
    if !(nu >= 0.0) || !nu.is_finite() {
        return Err(Error::Domain(format!("bessel_j requires nu >= 0, got {nu}")));
    }
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("bessel_j requires finite x >= 0, got {x}")));
    }
    Ok(jv(nu, x))
}

pub(crate) fn jv(nu: f64, x: f64) -> f64 {
    if x == 0.0 {
        return if nu == 0.0 { 1.0 } else { 0.0 };
    }
    if x <= 2.0 || 0.25 * x * x <= nu + 1.0 {
        series(nu, x)
    } else if x >= hankel_threshold(nu) {
        let (p, q) = hankel_pq(nu, x);
        let w = x - (0.5 * nu + 0.25) * PI;
        (2.0 / (PI * x)).sqrt() * (p * w.cos() - q * w.sin())
    } else {
        steed(nu, x)
    }
}

fn series(nu: f64, x: f64) -> f64 {
    let h = 0.5 * x;
    let lead = if nu < 150.0 {
        h.powf(nu) / gamma_pos(nu + 1.0)
    } else {
        (nu * h.ln() - ln_gamma_pos(nu + 1.0)).exp()
    };
    if lead == 0.0 {
        return 0.0;
    }
    let y = -h * h;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..500 {
        let kf = k as f64;
        term *= y / (kf * (kf + nu));
        sum += term;
        if term.abs() < EPS * sum.abs() {
            break;
        }
    }
    lead * sum
}

/// Hankel asymptotic P and Q with J_ν = √(2/πx)(P cos ω − Q sin ω).
pub(crate) fn hankel_pq(nu: f64, x: f64) -> (f64, f64) {
    let mu = 4.0 * nu * nu;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term = 1.0_f64;
    let mut prev = f64::INFINITY;
    for k in 1..200 {
        let odd = (2 * k - 1) as f64;
        term *= (mu - odd * odd) / (8.0 * k as f64 * x);
        let a = term.abs();
        if a > prev {
            break;
        }
        prev = a;
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 1 {
            q += sign * term;
        } else {
            p += sign * term;
        }
        if a < 1e-17 * (p.abs() + q.abs()) {
            break;
        }
    }
    (p, q)
}

/// Modulus and phase in the Hankel region: J_ν(x) = M cos θ.
///
/// Returns (M², θ). The phase satisfies θ'(x) = 2/(π x M²).
pub fn hankel_modulus_phase(nu: f64, x: f64) -> Result<(f64, f64)> {
    if !(nu >= 0.0) || !(x >= hankel_threshold(nu)) || !x.is_finite() {
        return Err(Error::Domain(format!(
            "modulus/phase needs x >= {} for nu = {nu}, got {x}",
            hankel_threshold(nu)
        )));
    }
    Ok(mod_phase(nu, x))
}

pub(crate) fn mod_phase(nu: f64, x: f64) -> (f64, f64) {
    let (p, q) = hankel_pq(nu, x);
    let m2 = 2.0 / (PI * x) * (p * p + q * q);
    let theta = x - nu * FRAC_PI_2 - FRAC_PI_4 + q.atan2(p);
    (m2, theta)
}

// Steed's method: CF1 for J'/J, downward recurrence, CF2 for (p, q).
fn steed(nu: f64, x: f64) -> f64 {
    let nl = ((nu - x + 1.5).floor()).max(0.0) as usize;
    let xmu = nu - nl as f64;
    let xmu2 = xmu * xmu;
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;
    let w = xi2 / PI;

    let mut isign = 1.0;
    let mut h = (nu * xi).max(FPMIN);
    let mut b = xi2 * nu;
    let mut d = 0.0;
    let mut c = h;
    let mut converged = false;
    for _ in 0..MAXIT {
        b += xi2;
        d = b - d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = b - 1.0 / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let del = c * d;
        h *= del;
        if d < 0.0 {
            isign = -isign;
        }
        if (del - 1.0).abs() < EPS {
            converged = true;
            break;
        }
    }
    if !converged {
        return f64::NAN;
    }

    let mut rjl = isign * FPMIN;
    let mut rjpl = h * rjl;
    let rjl1 = rjl;
    let mut fact = nu * xi;
    for _ in 0..nl {
        let rjtemp = fact * rjl + rjpl;
        fact -= xi;
        rjpl = fact * rjtemp - rjl;
        rjl = rjtemp;
    }
    if rjl == 0.0 {
        rjl = EPS;
    }
    let f = rjpl / rjl;

    let mut a = 0.25 - xmu2;
    let mut p = -0.5 * xi;
    let mut q = 1.0;
    let br = 2.0 * x;
    let mut bi = 2.0;
    let mut fact = a * xi / (p * p + q * q);
    let mut cr = br + q * fact;
    let mut ci = bi + p * fact;
    let mut den = br * br + bi * bi;
    let mut dr = br / den;
    let mut di = -bi / den;
    let mut dlr = cr * dr - ci * di;
    let mut dli = cr * di + ci * dr;
    let mut temp = p * dlr - q * dli;
    q = p * dli + q * dlr;
    p = temp;
    for i in 2..MAXIT {
        a += (2 * (i - 1)) as f64;
        bi += 2.0;
        dr = a * dr + br;
        di = a * di + bi;
        if dr.abs() + di.abs() < FPMIN {
            dr = FPMIN;
        }
        fact = a / (cr * cr + ci * ci);
        cr = br + cr * fact;
        ci = bi - ci * fact;
        if cr.abs() + ci.abs() < FPMIN {
            cr = FPMIN;
        }
        den = dr * dr + di * di;
        dr /= den;
        di /= -den;
        dlr = cr * dr - ci * di;
        dli = cr * di + ci * dr;
        temp = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = temp;
        if (dlr - 1.0).abs() + dli.abs() < EPS {
            break;
        }
    }
    let gam = (p - f) / q;
    let rjmu = (w / ((p - f) * gam + q)).sqrt().copysign(rjl);
    rjl1 * (rjmu / rjl)
}

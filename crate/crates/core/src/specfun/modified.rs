use std::f64::consts::PI;

use crate::{Error, Result};

const EPS: f64 = 1e-16;
const FPMIN: f64 = 1e-30;
const MAXIT: usize = 1_000_000;
const BIG: f64 = 1e250;

/// I_μ(x) for μ ≥ 0, x ≥ 0.
pub fn bessel_i(mu: f64, x: f64) -> Result<f64> {
    check_order(mu, 0.0)?;
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("bessel_i requires finite x >= 0, got {x}")));
    }
    if x == 0.0 {
        return Ok(if mu == 0.0 { 1.0 } else { 0.0 });
    }
    let v = ik_log(mu, x).0.exp();
    if v.is_infinite() {
        return Err(Error::Overflow(format!("I_{mu}({x})")));
    }
    Ok(v)
}

/// K_μ(x) for μ ≥ 0, x > 0.
pub fn bessel_k(mu: f64, x: f64) -> Result<f64> {
    check_order(mu, 0.0)?;
    check_positive(x)?;
    let v = ik_log(mu, x).1.exp();
    if v.is_infinite() {
        return Err(Error::Overflow(format!("K_{mu}({x})")));
    }
    Ok(v)
}

/// e^x K_μ(x).
pub fn bessel_k_scaled(mu: f64, x: f64) -> Result<f64> {
    check_order(mu, 0.0)?;
    check_positive(x)?;
    let v = kv_scaled(mu, x);
    if v.is_infinite() {
        return Err(Error::Overflow(format!("scaled K_{mu}({x})")));
    }
    Ok(v)
}

/// I_μ(x) K_μ(x) for μ ≥ −1 without forming either factor.
pub fn bessel_ik_product(mu: f64, x: f64) -> Result<f64> {
    check_order(mu, -1.0)?;
    check_positive(x)?;
    Ok(ik_product(mu, x))
}

fn check_order(mu: f64, min: f64) -> Result<()> {
    if !(mu >= min) || !mu.is_finite() {
        return Err(Error::Domain(format!("order must be >= {min}, got {mu}")));
    }
    Ok(())
}

fn check_positive(x: f64) -> Result<()> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("argument must be finite and > 0, got {x}")));
    }
    Ok(())
}

pub(crate) fn ik_product(mu: f64, x: f64) -> f64 {
    if mu >= 0.0 {
        let (li, lk) = ik_log(mu, x);
        return (li + lk).exp();
    }
    // I_{-ν} = I_ν + (2/π) sin(νπ) K_ν
    let nu = -mu;
    let (li, lk) = ik_log(nu, x);
    (li + lk).exp() + 2.0 / PI * (nu * PI).sin() * (2.0 * lk).exp()
}

pub(crate) fn kv_scaled(nu: f64, x: f64) -> f64 {
    (ik_log(nu, x).1 + x).exp()
}

fn asymptotic_region(nu: f64, x: f64) -> bool {
    x >= 30.0 && x >= nu * nu
}

/// (ln I_ν(x), ln K_ν(x)) for ν ≥ 0, x > 0.
pub(crate) fn ik_log(nu: f64, x: f64) -> (f64, f64) {
    if asymptotic_region(nu, x) {
        let (si, sk) = asymptotic_scaled(nu, x);
        return (si.ln() + x, sk.ln() - x);
    }
    let nl = (nu + 0.5).floor() as usize;
    let xmu = nu - nl as f64;
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;

    // CF1 for I'_ν / I_ν
    let mut h = (nu * xi).max(FPMIN);
    let mut b = xi2 * nu;
    let mut d = 0.0;
    let mut c = h;
    for _ in 0..MAXIT {
        b += xi2;
        d = 1.0 / (b + d);
        c = b + 1.0 / c;
        let del = c * d;
        h *= del;
        if (del - 1.0).abs() < EPS {
            break;
        }
    }

    let mut ril = FPMIN;
    let mut ripl = h * ril;
    let mut ln_down = 0.0;
    let mut fact = nu * xi;
    for _ in 0..nl {
        let ritemp = fact * ril + ripl;
        fact -= xi;
        ripl = fact * ritemp + ril;
        ril = ritemp;
        if ril.abs() > BIG {
            ril /= BIG;
            ripl /= BIG;
            ln_down += BIG.ln();
        }
    }
    let f = ripl / ril;

    let (rkmu, rk1, ln_k_scale) = if x < 2.0 {
        let (a, b) = temme_series(xmu, x);
        (a, b, 0.0)
    } else {
        let (a, b) = temme_cf2_scaled(xmu, x);
        (a, b, -x)
    };
    let rkmup = xmu * xi * rkmu - rk1;
    let rimu = xi / (f * rkmu - rkmup);
    let ln_i_mu = rimu.ln() - ln_k_scale;
    let ln_i = ln_i_mu + FPMIN.ln() - ril.abs().ln() - ln_down;

    let mut km = rkmu;
    let mut k1 = rk1;
    let mut ln_up = 0.0;
    for i in 1..=nl {
        let next = (xmu + i as f64) * xi2 * k1 + km;
        km = k1;
        k1 = next;
        if k1.abs() > BIG {
            k1 /= BIG;
            km /= BIG;
            ln_up += BIG.ln();
        }
    }
    let ln_k = km.ln() + ln_up + ln_k_scale;
    (ln_i, ln_k)
}

// e^{-x} I_ν and e^x K_ν for large x.
fn asymptotic_scaled(nu: f64, x: f64) -> (f64, f64) {
    let mu = 4.0 * nu * nu;
    let mut term = 1.0_f64;
    let mut si = 1.0;
    let mut sk = 1.0;
    let mut prev = f64::INFINITY;
    for k in 1..200 {
        let odd = (2 * k - 1) as f64;
        term *= (mu - odd * odd) / (8.0 * k as f64 * x);
        let a = term.abs();
        if a > prev {
            break;
        }
        prev = a;
        sk += term;
        si += if k % 2 == 0 { term } else { -term };
        if a < 1e-17 {
            break;
        }
    }
    (si / (2.0 * PI * x).sqrt(), sk * (PI / (2.0 * x)).sqrt())
}

fn chebev(c: &[f64], x: f64) -> f64 {
    let y2 = 2.0 * x;
    let mut d = 0.0;
    let mut dd = 0.0;
    for &cj in c.iter().skip(1).rev() {
        let sv = d;
        d = y2 * d - dd + cj;
        dd = sv;
    }
    x * d - dd + 0.5 * c[0]
}

/// Temme's Γ₁, Γ₂, 1/Γ(1+μ), 1/Γ(1−μ) for |μ| ≤ 1/2.
fn beschb(mu: f64) -> (f64, f64, f64, f64) {
    const C1: [f64; 7] = [
        -1.142_022_680_371_168e0,
        6.516_511_267_073_7e-3,
        3.087_090_173_086e-4,
        -3.470_626_964_9e-6,
        6.943_766_4e-9,
        3.677_95e-11,
        -1.356e-13,
    ];
    const C2: [f64; 8] = [
        1.843_740_587_300_905e0,
        -7.685_284_084_478_67e-2,
        1.271_927_136_654_6e-3,
        -4.971_736_704_2e-6,
        -3.312_611_98e-8,
        2.423_096e-10,
        -1.702e-13,
        -1.49e-15,
    ];
    let xx = 8.0 * mu * mu - 1.0;
    let gam1 = chebev(&C1, xx);
    let gam2 = chebev(&C2, xx);
    (gam1, gam2, gam2 - mu * gam1, gam2 + mu * gam1)
}

// K_μ and K_{μ+1} for x < 2, |μ| ≤ 1/2.
fn temme_series(xmu: f64, x: f64) -> (f64, f64) {
    let xmu2 = xmu * xmu;
    let x2 = 0.5 * x;
    let pimu = PI * xmu;
    let fact = if pimu.abs() < EPS { 1.0 } else { pimu / pimu.sin() };
    let d = -x2.ln();
    let e = xmu * d;
    let fact2 = if e.abs() < EPS { 1.0 } else { e.sinh() / e };
    let (gam1, gam2, gampl, gammi) = beschb(xmu);
    let mut ff = fact * (gam1 * e.cosh() + gam2 * fact2 * d);
    let mut sum = ff;
    let e = e.exp();
    let mut p = 0.5 * e / gampl;
    let mut q = 0.5 / (e * gammi);
    let mut c = 1.0;
    let d = x2 * x2;
    let mut sum1 = p;
    for i in 1..MAXIT {
        let fi = i as f64;
        ff = (fi * ff + p + q) / (fi * fi - xmu2);
        c *= d / fi;
        p /= fi - xmu;
        q /= fi + xmu;
        let del = c * ff;
        sum += del;
        sum1 += c * (p - fi * ff);
        if del.abs() < sum.abs() * EPS {
            break;
        }
    }
    (sum, sum1 * 2.0 / x)
}

// e^x K_μ and e^x K_{μ+1} for x ≥ 2 by Steed/Temme CF2.
fn temme_cf2_scaled(xmu: f64, x: f64) -> (f64, f64) {
    let xmu2 = xmu * xmu;
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut h = d;
    let mut delh = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let a1 = 0.25 - xmu2;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    for i in 2..MAXIT {
        a -= (2 * (i - 1)) as f64;
        c = -a * c / i as f64;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < EPS {
            break;
        }
    }
    h *= a1;
    let rkmu = (PI / (2.0 * x)).sqrt() / s;
    let rk1 = rkmu * (xmu + x + 0.5 - h) / x;
    (rkmu, rk1)
}

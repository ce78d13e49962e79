use super::bessel::{hankel_threshold, jv, mod_phase};
use crate::{Error, Result};

/// Brent's method on a bracketing interval.
pub fn brent_root<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, xtol: f64) -> Result<f64> {
    let mut fa = f(a);
    let mut fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::Domain(format!("root not bracketed on [{a}, {b}]")));
    }
    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;
    for _ in 0..200 {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol = 2.0 * f64::EPSILON * b.abs() + 0.5 * xtol;
        let m = 0.5 * (c - b);
        if m.abs() <= tol || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q) = if a == c {
                (2.0 * m * s, 1.0 - s)
            } else {
                let q = fa / fc;
                let r = fb / fc;
                (
                    s * (2.0 * m * q * (q - r) - (b - a) * (r - 1.0)),
                    (q - 1.0) * (r - 1.0) * (s - 1.0),
                )
            };
            if p > 0.0 {
                q = -q;
            } else {
                p = -p;
            }
            if 2.0 * p < (3.0 * m * q - (tol * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol { d } else { tol.copysign(m) };
        fb = f(b);
    }
    Err(Error::NoConvergence { best: b, error: (c - b).abs() })
}

/// The first `n` positive zeros of J_ν.
pub fn bessel_j_zeros(nu: f64, n: usize) -> Result<Vec<f64>> {
    if !(nu >= 0.0) || !nu.is_finite() {
        return Err(Error::Domain(format!("order must be >= 0, got {nu}")));
    }
    let mut out = Vec::with_capacity(n);
    let step = 0.5;
    let mut x0 = nu.max(1e-3);
    let mut f0 = jv(nu, x0);
    let threshold = hankel_threshold(nu);
    while out.len() < n {
        if x0 >= threshold {
            // zeros of cos θ: θ(z) = (j + 1/2)π, solved by Newton on the phase
            let (_, th) = mod_phase(nu, x0);
            let mut j = ((th / std::f64::consts::PI) - 0.5).ceil();
            while out.len() < n {
                let target = (j + 0.5) * std::f64::consts::PI;
                out.push(phase_solve(nu, target, x0)?);
                x0 = *out.last().unwrap();
                j += 1.0;
            }
            break;
        }
        let x1 = x0 + step;
        let f1 = jv(nu, x1);
        if f1 == 0.0 {
            out.push(x1);
        } else if f0.signum() != f1.signum() && f0 != 0.0 {
            out.push(brent_root(|x| jv(nu, x), x0, x1, 1e-15 * x1)?);
        }
        x0 = x1;
        f0 = f1;
    }
    Ok(out)
}

/// Solve θ(x) = target in the Hankel region, starting near `guess`.
pub(crate) fn phase_solve(nu: f64, target: f64, guess: f64) -> Result<f64> {
    let pi = std::f64::consts::PI;
    let lo_bound = hankel_threshold(nu);
    let mut x = guess.max(lo_bound);
    // θ(x) ≈ x − νπ/2 − π/4 to leading order
    let (_, th) = mod_phase(nu, x);
    x = (x + (target - th)).max(lo_bound);
    for _ in 0..60 {
        let (m2, th) = mod_phase(nu, x);
        let dth = 2.0 / (pi * x * m2);
        let dx = (th - target) / dth;
        x = (x - dx).max(lo_bound);
        if dx.abs() <= 1e-15 * x {
            return Ok(x);
        }
    }
    let (_, th) = mod_phase(nu, x);
    if (th - target).abs() < 1e-10 {
        Ok(x)
    } else {
        Err(Error::NoConvergence { best: x, error: (th - target).abs() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn first_zero_of_j0_bracketed() {
        let z = bessel_j_zeros(0.0, 1).unwrap()[0];
        assert!((z - 2.404_825_557_695_773).abs() < 1e-12);
        // independent bisection on a sign change
        let (mut a, mut b) = (2.0, 3.0);
        for _ in 0..100 {
            let m = 0.5 * (a + b);
            if jv(0.0, a).signum() == jv(0.0, m).signum() {
                a = m;
            } else {
                b = m;
            }
        }
        assert!((z - 0.5 * (a + b)).abs() < 1e-12);
    }

    #[test]
    fn half_order_zeros_are_multiples_of_pi() {
        let zs = bessel_j_zeros(0.5, 40).unwrap();
        for (k, z) in zs.iter().enumerate() {
            let want = (k + 1) as f64 * PI;
            assert!((z - want).abs() < 1e-11 * want, "k={k} {z}");
        }
    }

    #[test]
    fn zeros_interlace() {
        let a = bessel_j_zeros(0.0, 11).unwrap();
        let b = bessel_j_zeros(1.0, 11).unwrap();
        for n in 0..10 {
            assert!(a[n] < b[n] && b[n] < a[n + 1], "n={n}");
        }
    }

    #[test]
    fn zeros_small_and_increasing() {
        for &nu in &[0.0, 0.7, 2.0, 6.5] {
            let zs = bessel_j_zeros(nu, 30).unwrap();
            for w in zs.windows(2) {
                assert!(w[1] > w[0]);
            }
            for &z in &zs {
                // |J'| ≈ √(2/πz) near a zero
                let slope = (2.0 / (PI * z)).sqrt();
                assert!(jv(nu, z).abs() <= 1e-9 * slope, "nu={nu} z={z}");
            }
        }
    }

    #[test]
    fn brent_brackets() {
        let r = brent_root(|x| x * x - 2.0, 0.0, 2.0, 1e-15).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-14);
        assert!(brent_root(|x| x * x + 1.0, 0.0, 2.0, 1e-15).is_err());
    }
}

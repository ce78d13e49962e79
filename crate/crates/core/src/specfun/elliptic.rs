use std::f64::consts::FRAC_PI_2;

use crate::{Error, Result};

/// Complete elliptic integral of the second kind with modulus `t`:
/// E(t) = ∫₀^{π/2} √(1 − t² sin²θ) dθ.
pub fn elliptic_e(t: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::Domain(format!("modulus must lie in [0, 1], got {t}")));
    }
    if t == 1.0 {
        return Ok(1.0);
    }
    // arithmetic-geometric mean
    let mut a = 1.0_f64;
    let mut b = (1.0 - t * t).sqrt();
    let mut c = t;
    let mut pow2 = 0.5;
    let mut sum = pow2 * c * c;
    for _ in 0..64 {
        if c.abs() <= 1e-17 * a {
            break;
        }
        let an = 0.5 * (a + b);
        c = 0.5 * (a - b);
        b = (a * b).sqrt();
        a = an;
        pow2 *= 2.0;
        sum += pow2 * c * c;
    }
    Ok(FRAC_PI_2 / a * (1.0 - sum))
}

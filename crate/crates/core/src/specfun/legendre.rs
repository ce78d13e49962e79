use crate::{Error, Result};

/// P_k^{(d)}(t), the Legendre polynomial of degree k in d dimensions,
/// normalised by P_k^{(d)}(1) = 1.
pub fn legendre_pkd(k: usize, d: usize, t: f64) -> Result<f64> {
    if d < 2 {
        return Err(Error::Domain(format!("dimension must be >= 2, got {d}")));
    }
    if !(t.abs() <= 1.0 + 1e-12) {
        return Err(Error::Domain(format!("t must lie in [-1, 1], got {t}")));
    }
    Ok(pkd(k, d, t.clamp(-1.0, 1.0)))
}

pub(crate) fn pkd(k: usize, d: usize, t: f64) -> f64 {
    if k == 0 {
        return 1.0;
    }
    let dd = d as f64;
    let mut p0 = 1.0;
    let mut p1 = t;
    for j in 2..=k {
        let jf = j as f64;
        let p2 = ((2.0 * jf + dd - 4.0) * t * p1 - (jf - 1.0) * p0) / (jf + dd - 3.0);
        p0 = p1;
        p1 = p2;
    }
    p1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_cases() {
        for d in 2..8 {
            for &t in &[-1.0, -0.3, 0.0, 0.9] {
                assert_eq!(legendre_pkd(0, d, t).unwrap(), 1.0);
            }
        }
        assert_eq!(legendre_pkd(1, 5, 0.3).unwrap(), 0.3);
    }

    #[test]
    fn chebyshev_in_two_dimensions() {
        let th = 0.7_f64;
        assert!((legendre_pkd(3, 2, th.cos()).unwrap() - (3.0 * th).cos()).abs() < 1e-12);
        for k in 0..40 {
            let got = legendre_pkd(k, 2, th.cos()).unwrap();
            assert!((got - (k as f64 * th).cos()).abs() < 1e-12, "k={k}");
        }
    }

    #[test]
    fn classical_legendre_in_three_dimensions() {
        let t = 0.37_f64;
        let p2 = 0.5 * (3.0 * t * t - 1.0);
        let p3 = 0.5 * (5.0 * t * t * t - 3.0 * t);
        assert!((pkd(2, 3, t) - p2).abs() < 1e-15);
        assert!((pkd(3, 3, t) - p3).abs() < 1e-15);
    }

    #[test]
    fn domain() {
        assert!(legendre_pkd(2, 3, 1.1).is_err());
        assert!(legendre_pkd(2, 1, 0.1).is_err());
        assert!(legendre_pkd(2, 3, 1.0 + 1e-13).is_ok());
    }

    proptest::proptest! {
        #[test]
        fn bounded_by_one(k in 0usize..60, d in 2usize..9, t in -1.0f64..1.0) {
            proptest::prop_assert!(pkd(k, d, t).abs() <= 1.0 + 1e-12);
        }
        #[test]
        fn value_at_one(k in 0usize..60, d in 2usize..9) {
            proptest::prop_assert!((pkd(k, d, 1.0) - 1.0).abs() < 1e-12);
        }
    }
}

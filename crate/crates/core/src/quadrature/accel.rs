/// Wynn's epsilon algorithm applied to a sequence of partial sums.
///
/// Returns the best limit estimate and a heuristic error estimate taken from
/// the spread of the last entries of the most reliable even column.
pub fn wynn_epsilon(seq: &[f64]) -> (f64, f64) {
    let n = seq.len();
    if n == 0 {
        return (0.0, f64::INFINITY);
    }
    if n == 1 {
        return (seq[0], f64::INFINITY);
    }
    let mut best = seq[n - 1];
    let mut best_err = (seq[n - 1] - seq[n - 2]).abs();
    let mut prev2: Vec<f64> = seq.to_vec(); // column k-2 (even)
    let mut prev: Vec<f64> = vec![0.0; n + 1]; // column -1
    let mut cur: Vec<f64> = seq.to_vec(); // column 0
    let mut k = 0;
    while cur.len() > 1 {
        let mut next = Vec::with_capacity(cur.len() - 1);
        for j in 0..cur.len() - 1 {
            let diff = cur[j + 1] - cur[j];
            if diff == 0.0 || !diff.is_finite() {
                // exact convergence in this column
                let v = cur[j + 1];
                if k % 2 == 0 && v.is_finite() {
                    return (v, best_err.min(f64::EPSILON * v.abs()));
                }
                next.push(f64::INFINITY);
                continue;
            }
            next.push(prev[j + 1] + 1.0 / diff);
        }
        k += 1;
        prev = std::mem::replace(&mut cur, next);
        if k % 2 == 0 && cur.len() >= 2 {
            let m = cur.len();
            let last = cur[m - 1];
            let err = (last - cur[m - 2]).abs() + (last - prev2[prev2.len() - 1]).abs();
            if last.is_finite() && err < best_err {
                best = last;
                best_err = err;
            }
            prev2 = cur.clone();
        }
    }
    (best, best_err)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alternating_harmonic_series() {
        let mut s = 0.0;
        let mut seq = Vec::new();
        for k in 1..=20 {
            s += if k % 2 == 1 { 1.0 } else { -1.0 } / k as f64;
            seq.push(s);
        }
        let (v, e) = wynn_epsilon(&seq);
        assert!((v - 2f64.ln()).abs() < 1e-12, "{v}");
        assert!(e < 1e-8);
    }

    #[test]
    fn geometric_sequence_is_exact() {
        let seq: Vec<f64> = (0..8).map(|j| 3.0 - 0.7 * 0.5f64.powi(j)).collect();
        let (v, _) = wynn_epsilon(&seq);
        assert!((v - 3.0).abs() < 1e-13);
    }

    #[test]
    fn two_geometric_modes() {
        let seq: Vec<f64> = (0..12)
            .map(|j| 1.0 + 0.9 * 0.955f64.powi(j) - 0.3 * 0.01f64.powi(j))
            .collect();
        let (v, _) = wynn_epsilon(&seq);
        assert!((v - 1.0).abs() < 1e-9, "{v}");
    }
}

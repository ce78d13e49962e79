//! Catalog of (w, ψ) pairs, their L¹ norms and radial Fourier transforms.

use std::f64::consts::PI;
use std::fmt;
use std::path::Path;
use std::sync::Arc;

use crate::quadrature::{integrate_bessel_single, Decay, TailHint};
use crate::specfun::{gamma_pos, ik_log, AccuracyBudget};
use crate::{Error, Result};

/// Tabulated weight, interpolated by monotone piecewise cubics.
#[derive(Debug, Clone, PartialEq)]
pub struct Tabulated {
    pub source: String,
    r: Vec<f64>,
    w: Vec<f64>,
    slopes: Vec<f64>,
}

impl Tabulated {
    pub fn new(source: impl Into<String>, r: Vec<f64>, w: Vec<f64>) -> Result<Self> {
        if r.len() < 2 || r.len() != w.len() {
            return Err(Error::Invalid("a tabulated weight needs at least two (r, w) rows".into()));
        }
        if r[0] < 0.0 || r.windows(2).any(|p| !(p[0] < p[1])) {
            return Err(Error::Invalid("r must be non-negative and strictly increasing".into()));
        }
        if w.iter().any(|&v| !(v >= 0.0) || !v.is_finite()) {
            return Err(Error::Invalid("w must be finite and non-negative".into()));
        }
        let slopes = pchip_slopes(&r, &w);
        Ok(Self { source: source.into(), r, w, slopes })
    }

    /// Reads a CSV file with header `r,w`.
    pub fn from_csv(path: &Path) -> Result<Self> {
        let mut rd = csv::Reader::from_path(path)
            .map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
        let headers = rd.headers().map_err(|e| Error::Invalid(e.to_string()))?.clone();
        if headers.len() != 2 || headers[0].trim() != "r" || headers[1].trim() != "w" {
            return Err(Error::Invalid(format!("{}: header must be `r,w`", path.display())));
        }
        let (mut r, mut w) = (Vec::new(), Vec::new());
        for (i, rec) in rd.records().enumerate() {
            let rec = rec.map_err(|e| Error::Invalid(e.to_string()))?;
            let parse = |s: &str| {
                s.trim()
                    .parse::<f64>()
                    .map_err(|e| Error::Invalid(format!("row {}: {e}", i + 2)))
            };
            r.push(parse(&rec[0])?);
            w.push(parse(&rec[1])?);
        }
        Self::new(path.display().to_string(), r, w)
    }

    pub fn support_end(&self) -> f64 {
        *self.r.last().unwrap()
    }

    pub fn eval(&self, t: f64) -> f64 {
        let n = self.r.len();
        if t <= self.r[0] {
            return self.w[0];
        }
        if t > self.r[n - 1] {
            return 0.0;
        }
        let i = self.r.partition_point(|&x| x < t).clamp(1, n - 1) - 1;
        let h = self.r[i + 1] - self.r[i];
        let s = (t - self.r[i]) / h;
        let h00 = (1.0 + 2.0 * s) * (1.0 - s) * (1.0 - s);
        let h10 = s * (1.0 - s) * (1.0 - s);
        let h01 = s * s * (3.0 - 2.0 * s);
        let h11 = s * s * (s - 1.0);
        h00 * self.w[i] + h10 * h * self.slopes[i] + h01 * self.w[i + 1] + h11 * h * self.slopes[i + 1]
    }
}

// Fritsch–Butland slopes with the usual shape-preserving end conditions.
fn pchip_slopes(x: &[f64], y: &[f64]) -> Vec<f64> {
    let n = x.len();
    let h: Vec<f64> = x.windows(2).map(|p| p[1] - p[0]).collect();
    let del: Vec<f64> = (0..n - 1).map(|i| (y[i + 1] - y[i]) / h[i]).collect();
    let mut d = vec![0.0; n];
    if n == 2 {
        d[0] = del[0];
        d[1] = del[0];
        return d;
    }
    for k in 1..n - 1 {
        if del[k - 1] * del[k] > 0.0 {
            let w1 = 2.0 * h[k] + h[k - 1];
            let w2 = h[k] + 2.0 * h[k - 1];
            d[k] = (w1 + w2) / (w1 / del[k - 1] + w2 / del[k]);
        }
    }
    let end = |h0: f64, h1: f64, d0: f64, d1: f64| {
        let s = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
        if s.signum() != d0.signum() {
            0.0
        } else if d0.signum() != d1.signum() && s.abs() > 3.0 * d0.abs() {
            3.0 * d0
        } else {
            s
        }
    };
    d[0] = end(h[0], h[1], del[0], del[1]);
    d[n - 1] = end(h[n - 2], h[n - 3], del[n - 2], del[n - 3]);
    d
}

#[derive(Debug, Clone, PartialEq)]
pub enum WeightKind {
    /// (1+r²)^{−s/2} paired with ψ² = (1+r²)^{1/2}.
    TypeA { s: f64 },
    /// r^{−s} paired with ψ² = r^{2−s}.
    TypeB { s: f64 },
    /// (1+r²)^{−s/2} paired with ψ² = r.
    TypeC { s: f64 },
    Gaussian,
    Exponential,
    BesselK0,
    /// (1 − cos r)/r², whose three-dimensional transform has compact support.
    Fejer,
    Custom(Arc<Tabulated>),
}

/// The square of the smoothing function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PsiSq {
    /// (1+r²)^{1/2}
    Japanese,
    /// r^p
    Power(f64),
}

impl PsiSq {
    pub fn eval(self, r: f64) -> f64 {
        match self {
            PsiSq::Japanese => (1.0 + r * r).sqrt(),
            PsiSq::Power(p) if p == 1.0 => r,
            PsiSq::Power(p) => r.powf(p),
        }
    }

    pub fn label(self) -> String {
        match self {
            PsiSq::Japanese => "(1+r^2)^(1/2)".into(),
            PsiSq::Power(p) if p == 1.0 => "r".into(),
            PsiSq::Power(p) => format!("r^{p}"),
        }
    }
}

/// A spatial weight together with its smoothing function.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightPair {
    pub kind: WeightKind,
    pub psi_sq: PsiSq,
}

impl fmt::Display for WeightPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.id())
    }
}

impl WeightPair {
    pub fn type_a(s: f64) -> Result<Self> {
        if !(s >= 2.0) || !s.is_finite() {
            return Err(Error::Invalid(format!("typeA requires s >= 2, got {s}")));
        }
        Ok(Self { kind: WeightKind::TypeA { s }, psi_sq: PsiSq::Japanese })
    }

    pub fn type_b(s: f64) -> Result<Self> {
        if !(s > 1.0) || !s.is_finite() {
            return Err(Error::Invalid(format!("typeB requires s > 1, got {s}")));
        }
        Ok(Self { kind: WeightKind::TypeB { s }, psi_sq: PsiSq::Power(2.0 - s) })
    }

    pub fn type_c(s: f64) -> Result<Self> {
        if !(s > 1.0) || !s.is_finite() {
            return Err(Error::Invalid(format!("typeC requires s > 1, got {s}")));
        }
        Ok(Self { kind: WeightKind::TypeC { s }, psi_sq: PsiSq::Power(1.0) })
    }

    pub fn gaussian() -> Self {
        Self { kind: WeightKind::Gaussian, psi_sq: PsiSq::Power(1.0) }
    }

    pub fn exponential() -> Self {
        Self { kind: WeightKind::Exponential, psi_sq: PsiSq::Power(1.0) }
    }

    pub fn bessel_k0() -> Self {
        Self { kind: WeightKind::BesselK0, psi_sq: PsiSq::Power(1.0) }
    }

    pub fn fejer() -> Self {
        Self { kind: WeightKind::Fejer, psi_sq: PsiSq::Power(1.0) }
    }

    pub fn custom(table: Tabulated) -> Self {
        Self { kind: WeightKind::Custom(Arc::new(table)), psi_sq: PsiSq::Power(1.0) }
    }

    /// Replace ψ² by r.
    pub fn with_sqrt_r_psi(mut self) -> Self {
        self.psi_sq = PsiSq::Power(1.0);
        self
    }

    /// Parse a catalog id such as `typeA:s=2`, `gaussian` or `custom:<path>`.
    pub fn parse(id: &str) -> Result<Self> {
        let id = id.trim();
        let param = |rest: &str| -> Result<f64> {
            let v = rest
                .strip_prefix("s=")
                .ok_or_else(|| Error::Invalid(format!("expected `s=<value>` in `{id}`")))?;
            v.parse::<f64>()
                .map_err(|e| Error::Invalid(format!("bad s in `{id}`: {e}")))
        };
        if let Some(rest) = id.strip_prefix("typeA:") {
            return Self::type_a(param(rest)?);
        }
        if let Some(rest) = id.strip_prefix("typeB:") {
            return Self::type_b(param(rest)?);
        }
        if let Some(rest) = id.strip_prefix("typeC:") {
            return Self::type_c(param(rest)?);
        }
        if let Some(path) = id.strip_prefix("custom:") {
            return Ok(Self::custom(Tabulated::from_csv(Path::new(path))?));
        }
        match id {
            "gaussian" => Ok(Self::gaussian()),
            "exp" | "exponential" => Ok(Self::exponential()),
            "besselK0" => Ok(Self::bessel_k0()),
            "fejer" => Ok(Self::fejer()),
            _ => Err(Error::Invalid(format!("unknown weight id `{id}`"))),
        }
    }

    pub fn id(&self) -> String {
        match &self.kind {
            WeightKind::TypeA { s } => format!("typeA:s={s}"),
            WeightKind::TypeB { s } => format!("typeB:s={s}"),
            WeightKind::TypeC { s } => format!("typeC:s={s}"),
            WeightKind::Gaussian => "gaussian".into(),
            WeightKind::Exponential => "exp".into(),
            WeightKind::BesselK0 => "besselK0".into(),
            WeightKind::Fejer => "fejer".into(),
            WeightKind::Custom(t) => format!("custom:{}", t.source),
        }
    }

    /// Check the parameter ranges that make the estimate true in dimension d.
    pub fn validate_for_dimension(&self, d: usize) -> Result<()> {
        if d < 2 {
            return Err(Error::Invalid(format!("dimension must be >= 2, got {d}")));
        }
        match self.kind {
            WeightKind::TypeA { s } if d == 2 && s <= 2.0 => {
                Err(Error::Invalid(format!("typeA in d = 2 requires s > 2, got {s}")))
            }
            WeightKind::TypeB { s } if s >= d as f64 => {
                Err(Error::Invalid(format!("typeB requires 1 < s < d = {d}, got {s}")))
            }
            _ => Ok(()),
        }
    }

    pub fn w(&self, t: f64) -> f64 {
        match &self.kind {
            WeightKind::TypeA { s } | WeightKind::TypeC { s } => (1.0 + t * t).powf(-0.5 * s),
            WeightKind::TypeB { s } => t.powf(-s),
            WeightKind::Gaussian => (-0.5 * t * t).exp(),
            WeightKind::Exponential => (-t).exp(),
            WeightKind::BesselK0 => {
                if t <= 0.0 {
                    f64::INFINITY
                } else {
                    ik_log(0.0, t).1.exp()
                }
            }
            WeightKind::Fejer => {
                if t < 1e-4 {
                    0.5 - t * t / 24.0
                } else {
                    let h = (0.5 * t).sin();
                    2.0 * h * h / (t * t)
                }
            }
            WeightKind::Custom(tab) => tab.eval(t),
        }
    }

    pub fn psi_sq(&self, r: f64) -> f64 {
        self.psi_sq.eval(r)
    }

    pub fn is_type_b(&self) -> bool {
        matches!(self.kind, WeightKind::TypeB { .. })
    }

    /// Decay class of w(t)·t^p for moderate p.
    pub fn decay(&self) -> Decay {
        match &self.kind {
            WeightKind::Gaussian => Decay::Cutoff(12.0),
            WeightKind::Exponential | WeightKind::BesselK0 => Decay::Cutoff(60.0),
            WeightKind::Custom(t) => Decay::Cutoff(t.support_end()),
            _ => Decay::Algebraic,
        }
    }

    /// ‖w‖_{L¹(0,∞)}.
    pub fn l1_norm(&self) -> Result<f64> {
        match &self.kind {
            WeightKind::TypeA { s } | WeightKind::TypeC { s } => {
                Ok(PI.sqrt() * gamma_pos(0.5 * (s - 1.0)) / (2.0 * gamma_pos(0.5 * s)))
            }
            WeightKind::TypeB { .. } => Err(Error::Divergent("r^{-s} is not integrable on (0, ∞)".into())),
            WeightKind::Gaussian => Ok((0.5 * PI).sqrt()),
            WeightKind::Exponential => Ok(1.0),
            WeightKind::BesselK0 | WeightKind::Fejer => Ok(0.5 * PI),
            WeightKind::Custom(tab) => {
                let mut pts = tab.r.clone();
                pts.insert(0, 0.0);
                pts.dedup();
                let q = crate::quadrature::integrate_with_breakpoints(
                    |t| tab.eval(t),
                    &pts,
                    AccuracyBudget::default(),
                )?;
                Ok(q.value)
            }
        }
    }

    /// Closed form of F̂^{(d)}(ρ) when one is registered.
    pub fn fhat_closed(&self, d: usize, rho: f64) -> Option<f64> {
        let df = d as f64;
        match &self.kind {
            WeightKind::TypeA { s } | WeightKind::TypeC { s } => {
                let alpha = 0.5 * (df - s).abs();
                let lnk = ik_log(alpha, rho).1;
                let pre = (2.0 * PI).powf(0.5 * df) * 2f64.powf(1.0 - 0.5 * s) / gamma_pos(0.5 * s);
                Some(pre * (0.5 * (s - df) * rho.ln() + lnk).exp())
            }
            WeightKind::TypeB { .. } => None,
            WeightKind::Gaussian => Some((2.0 * PI).powf(0.5 * df) * (-0.5 * rho * rho).exp()),
            WeightKind::Exponential => Some(
                2f64.powi(d as i32) * PI.powf(0.5 * (df - 1.0)) * gamma_pos(0.5 * (df + 1.0))
                    * (1.0 + rho * rho).powf(-0.5 * (df + 1.0)),
            ),
            WeightKind::BesselK0 => Some(
                (2.0 * PI).powf(0.5 * df) * 2f64.powf(0.5 * df - 1.0) * gamma_pos(0.5 * df)
                    * (1.0 + rho * rho).powf(-0.5 * df),
            ),
            WeightKind::Fejer if d == 3 => Some(if rho < 1.0 {
                2.0 * PI * PI / rho
            } else if rho == 1.0 {
                PI * PI
            } else {
                0.0
            }),
            _ => None,
        }
    }

    /// Points where F̂^{(d)} is not smooth.
    pub fn fhat_breaks(&self, d: usize) -> &'static [f64] {
        match self.kind {
            WeightKind::Fejer if d == 3 => &[1.0],
            _ => &[],
        }
    }

    /// F̂^{(d)}(ρ) by the Hankel integral, ignoring any closed form.
    pub fn fhat_quadrature(&self, d: usize, rho: f64, budget: AccuracyBudget) -> Result<f64> {
        if !(rho > 0.0) {
            return Err(Error::Domain(format!("rho must be > 0, got {rho}")));
        }
        let df = d as f64;
        match self.kind {
            WeightKind::TypeB { .. } => {
                return Err(Error::Unavailable("the transform of r^{-s} is not a function".into()))
            }
            WeightKind::TypeA { s } | WeightKind::TypeC { s } if s <= 0.5 * (df - 1.0) => {
                return Err(Error::Divergent(format!("Hankel integral diverges for s = {s}, d = {d}")))
            }
            WeightKind::Fejer if d >= 5 => {
                return Err(Error::Divergent(format!("Hankel integral diverges for d = {d}")))
            }
            _ => {}
        }
        let hint = TailHint { scale: 1.0, decay: Some(self.decay()) };
        let q = integrate_bessel_single(|t: f64| self.w(t) * t.powf(0.5 * df), 0.5 * df - 1.0, rho, budget, hint)?;
        Ok((2.0 * PI).powf(0.5 * df) * rho.powf(1.0 - 0.5 * df) * q.value)
    }

    /// F̂^{(d)}(ρ), from the closed form when registered.
    pub fn fourier_radial(&self, d: usize, rho: f64) -> Result<f64> {
        if !(rho > 0.0) || !rho.is_finite() {
            return Err(Error::Domain(format!("rho must be finite and > 0, got {rho}")));
        }
        if d < 2 {
            return Err(Error::Domain(format!("dimension must be >= 2, got {d}")));
        }
        match self.fhat_closed(d, rho) {
            Some(v) => Ok(v),
            None => self.fhat_quadrature(d, rho, AccuracyBudget::default()),
        }
    }

    pub fn has_fhat(&self, d: usize) -> bool {
        self.fhat_closed(d, 1.0).is_some()
    }

    fn fhat_sign_known(&self, dim: usize) -> Option<bool> {
        match self.kind {
            // c·ρ^{s−dim} with c > 0
            WeightKind::TypeB { s } => Some(s < dim as f64),
            // dim 5: 4π³ρ^{-3} on (0,1) plus a positive point mass at ρ = 1
            WeightKind::Fejer if dim == 3 || dim == 5 => Some(true),
            WeightKind::Fejer => Some(false),
            _ => None,
        }
    }
}

/// Whether F̂^{(d+2j)} ≥ 0 for j = 0..=j_max, by sampling on a log grid.
pub fn fhat_nonneg_all_dims(pair: &WeightPair, d: usize, j_max: usize) -> bool {
    (0..=j_max).all(|j| {
        let dim = d + 2 * j;
        if let Some(known) = pair.fhat_sign_known(dim) {
            return known;
        }
        let mut vals = Vec::new();
        for i in 0..=40 {
            let rho = 10f64.powf(-2.0 + 4.0 * i as f64 / 40.0);
            match pair.fourier_radial(dim, rho) {
                Ok(v) if v.is_finite() => vals.push(v),
                _ => return false,
            }
        }
        let scale = vals.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        vals.iter().all(|&v| v >= -1e-9 * scale)
    })
}

/// The catalog weights that have a function-valued transform.
pub fn catalog() -> Vec<WeightPair> {
    vec![
        WeightPair::type_a(2.5).unwrap(),
        WeightPair::type_c(2.0).unwrap(),
        WeightPair::gaussian(),
        WeightPair::exponential(),
        WeightPair::bessel_k0(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::integrate_finite;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs()
    }

    #[test]
    fn paper_transforms_in_two_dimensions() {
        for &rho in &[0.1, 0.7, 2.0, 9.0] {
            let k0 = WeightPair::bessel_k0().fourier_radial(2, rho).unwrap();
            assert!(close(k0, 2.0 * PI / (1.0 + rho * rho), 1e-14));
            let g = WeightPair::gaussian().fourier_radial(2, rho).unwrap();
            assert!(close(g, 2.0 * PI * (-0.5 * rho * rho).exp(), 1e-14));
            let e = WeightPair::exponential().fourier_radial(2, rho).unwrap();
            assert!(close(e, 2.0 * PI * (1.0 + rho * rho).powf(-1.5), 1e-14));
        }
    }

    #[test]
    fn type_a_transform_in_three_dimensions() {
        // 2π² e^{−ρ}/ρ
        let p = WeightPair::type_a(2.0).unwrap();
        for &rho in &[0.01, 1.0, 30.0] {
            let v = p.fourier_radial(3, rho).unwrap();
            assert!(close(v, 2.0 * PI * PI * (-rho).exp() / rho, 1e-12));
        }
    }

    #[test]
    fn closed_forms_match_quadrature() {
        let budget = AccuracyBudget::new(1e-11, 1e-14).unwrap();
        let mut pairs = catalog();
        pairs.push(WeightPair::type_a(3.0).unwrap());
        for p in &pairs {
            for d in 2..=5 {
                for i in 0..=8 {
                    let rho = 10f64.powf(-2.0 + 4.0 * i as f64 / 8.0);
                    let Some(cf) = p.fhat_closed(d, rho) else { continue };
                    let q = match p.fhat_quadrature(d, rho, budget) {
                        Ok(q) => q,
                        Err(Error::Divergent(_)) => continue,
                        Err(e) => panic!("{} d={d} rho={rho}: {e}", p.id()),
                    };
                    // the gaussian transform underflows; compare on an absolute floor
                    let floor = 1e-12 * (2.0 * PI).powf(0.5 * d as f64);
                    assert!((q - cf).abs() <= 1e-7 * cf.abs() + floor, "{} d={d} rho={rho} {q} {cf}", p.id());
                }
            }
        }
    }

    #[test]
    fn fejer_transform_inverts_to_the_weight() {
        // w(r) = (2π)^{-3/2} r^{-1/2} ∫₀¹ F̂(ρ) ρ^{3/2} J_{1/2}(rρ) dρ
        let p = WeightPair::fejer();
        let budget = AccuracyBudget::new(1e-12, 1e-15).unwrap();
        for &r in &[0.05, 0.5, 1.0, 3.0, 10.0, 40.0] {
            let q = integrate_finite(
                |rho: f64| p.fhat_closed(3, rho).unwrap() * rho.powf(1.5) * crate::specfun::jv(0.5, r * rho),
                0.0,
                1.0,
                budget,
            )
            .unwrap();
            let back = (2.0 * PI).powf(-1.5) * r.powf(-0.5) * q.value;
            assert!((back - p.w(r)).abs() < 1e-10, "r={r} {back} {}", p.w(r));
        }
        assert_eq!(p.fhat_closed(3, 1.5), Some(0.0));
    }

    #[test]
    fn l1_norms() {
        assert!(close(WeightPair::bessel_k0().l1_norm().unwrap(), PI / 2.0, 1e-15));
        assert!(close(WeightPair::gaussian().l1_norm().unwrap(), (PI / 2.0).sqrt(), 1e-15));
        assert!(close(WeightPair::exponential().l1_norm().unwrap(), 1.0, 1e-15));
        assert!(WeightPair::type_b(1.5).unwrap().l1_norm().is_err());
        let budget = AccuracyBudget::default();
        for p in [WeightPair::type_c(2.0).unwrap(), WeightPair::type_a(3.5).unwrap(), WeightPair::bessel_k0()] {
            // t = u/(1−u) maps (0,1) onto (0,∞)
            let q = integrate_finite(|u: f64| p.w(u / (1.0 - u)) / ((1.0 - u) * (1.0 - u)), 0.0, 1.0, budget).unwrap();
            assert!(close(p.l1_norm().unwrap(), q.value, 1e-9), "{}", p.id());
        }
    }

    #[test]
    fn nonnegativity_of_transforms() {
        assert!(fhat_nonneg_all_dims(&WeightPair::type_a(2.0).unwrap(), 3, 4));
        assert!(fhat_nonneg_all_dims(&WeightPair::bessel_k0(), 2, 3));
        assert!(fhat_nonneg_all_dims(&WeightPair::fejer(), 3, 1));
        assert!(!fhat_nonneg_all_dims(&WeightPair::fejer(), 3, 2));
    }

    #[test]
    fn parameter_validation() {
        assert!(WeightPair::type_a(1.9).is_err());
        assert!(WeightPair::type_a(2.0).unwrap().validate_for_dimension(2).is_err());
        assert!(WeightPair::type_a(2.0).unwrap().validate_for_dimension(3).is_ok());
        assert!(WeightPair::type_b(3.0).unwrap().validate_for_dimension(3).is_err());
        assert!(WeightPair::type_b(1.0).is_err());
        assert!(WeightPair::type_c(1.0).is_err());
    }

    #[test]
    fn ids_round_trip() {
        for id in ["typeA:s=2", "typeB:s=1.5", "typeC:s=3", "gaussian", "exp", "besselK0", "fejer"] {
            assert_eq!(WeightPair::parse(id).unwrap().id(), id);
        }
        assert!(WeightPair::parse("typeQ:s=1").is_err());
        assert!(WeightPair::parse("typeA:x=1").is_err());
    }

    #[test]
    fn tabulated_weight() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("w.csv");
        let mut body = String::from("r,w\n");
        for i in 0..=200 {
            let r = i as f64 * 0.05;
            body += &format!("{r},{}\n", (-r).exp());
        }
        std::fs::write(&path, body).unwrap();
        let p = WeightPair::parse(&format!("custom:{}", path.display())).unwrap();
        assert!((p.w(1.234) - (-1.234f64).exp()).abs() < 1e-5);
        assert_eq!(p.w(11.0), 0.0);
        // ∫₀^{10} e^{−t} dt
        assert!((p.l1_norm().unwrap() - (1.0 - (-10.0f64).exp())).abs() < 1e-5);
        // monotone data stays monotone
        let mut prev = f64::INFINITY;
        for i in 0..1000 {
            let v = p.w(i as f64 * 0.01);
            assert!(v <= prev);
            prev = v;
        }
        std::fs::write(&path, "x,y\n1,2\n").unwrap();
        assert!(Tabulated::from_csv(&path).is_err());
        std::fs::write(&path, "r,w\n1,2\n0.5,1\n").unwrap();
        assert!(Tabulated::from_csv(&path).is_err());
    }

    #[test]
    fn hankel_divergence_is_reported() {
        let p = WeightPair::type_a(2.0).unwrap();
        assert!(matches!(p.fhat_quadrature(5, 1.0, AccuracyBudget::default()), Err(Error::Divergent(_))));
        assert!(matches!(WeightPair::type_b(1.5).unwrap().fourier_radial(3, 1.0), Err(Error::Unavailable(_))));
    }
}

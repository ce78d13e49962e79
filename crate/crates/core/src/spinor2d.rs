//! Gamma matrices, the explicit spinor basis `E_{k,n}^μ(θ)` in two
//! dimensions, and the identities that reduce the Dirac problem to 2×2
//! blocks.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::dirac::{phi, q_matrix, TwoByTwo};
use crate::lambda::lambda_k_bessel;
use crate::quadrature::integrate_with_breakpoints;
use crate::specfun::AccuracyBudget;
use crate::weights::WeightPair;
use crate::{Error, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Dense complex N×N matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CMat<const N: usize>(pub [[Complex64; N]; N]);

pub type CMat2 = CMat<2>;
pub type CMat4 = CMat<4>;

impl<const N: usize> CMat<N> {
    pub fn zero() -> Self {
        Self([[Complex64::new(0.0, 0.0); N]; N])
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for i in 0..N {
            m.0[i][i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut m = *self;
        for i in 0..N {
            for j in 0..N {
                m.0[i][j] += o.0[i][j];
            }
        }
        m
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let mut m = *self;
        m.0.iter_mut().flatten().for_each(|x| *x *= c);
        m
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut m = Self::zero();
        for i in 0..N {
            for j in 0..N {
                m.0[i][j] = (0..N).map(|l| self.0[i][l] * o.0[l][j]).sum();
            }
        }
        m
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut m = Self::zero();
        for i in 0..N {
            for j in 0..N {
                m.0[i][j] = self.0[j][i].conj();
            }
        }
        m
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().map(|x| x.norm()).fold(0.0, f64::max)
    }
}

impl From<TwoByTwo> for CMat2 {
    fn from(t: TwoByTwo) -> Self {
        let c = |x: f64| Complex64::new(x, 0.0);
        CMat([[c(t.a11), c(t.a12)], [c(t.a21), c(t.a22)]])
    }
}

fn c2(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> CMat2 {
    CMat([[a, b], [c, d]])
}

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Largest entry of γ_jγ_k + γ_kγ_j − 2δ_{jk}I over all pairs.
pub fn anticommutation_defect<const N: usize>(gammas: &[CMat<N>]) -> f64 {
    let mut worst: f64 = 0.0;
    for (j, a) in gammas.iter().enumerate() {
        for (k, b) in gammas.iter().enumerate() {
            let mut ac = a.mul(b).add(&b.mul(a));
            if j == k {
                ac = ac.sub(&CMat::identity().scale(re(2.0)));
            }
            worst = worst.max(ac.max_abs());
        }
    }
    worst
}

/// Pauli matrices: γ₁ = σ₁, γ₂ = σ₂ and γ₃ = σ₃ plays the role of the mass matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaSet2D {
    pub g1: CMat2,
    pub g2: CMat2,
    pub g3: CMat2,
}

impl GammaSet2D {
    pub fn pauli() -> Self {
        let (o, z) = (re(1.0), re(0.0));
        Self { g1: c2(z, o, o, z), g2: c2(z, -I, I, z), g3: c2(o, z, z, -o) }
    }

    pub fn as_array(&self) -> [CMat2; 3] {
        [self.g1, self.g2, self.g3]
    }

    pub fn is_hermitian(&self) -> bool {
        self.as_array().iter().all(|g| g.adjoint() == *g)
    }
}

/// Dirac representation in three dimensions: γ_j = [[0, σ_j], [σ_j, 0]],
/// γ₄ = diag(I, −I).
pub fn gammas_3d() -> [CMat4; 4] {
    let p = GammaSet2D::pauli().as_array();
    let mut out = [CMat4::zero(); 4];
    for (j, s) in p.iter().enumerate() {
        for a in 0..2 {
            for b in 0..2 {
                out[j].0[a][b + 2] = s.0[a][b];
                out[j].0[a + 2][b] = s.0[a][b];
            }
        }
    }
    for i in 0..4 {
        out[3].0[i][i] = re(if i < 2 { 1.0 } else { -1.0 });
    }
    out
}

/// Φ_m(ξ) = ξ₁γ₁ + ξ₂γ₂ + mγ₃.
pub fn dirac_symbol(xi: [f64; 2], m: f64) -> CMat2 {
    let g = GammaSet2D::pauli();
    g.g1.scale(re(xi[0])).add(&g.g2.scale(re(xi[1]))).add(&g.g3.scale(re(m)))
}

pub fn dirac_symbol_3d(xi: [f64; 3], m: f64) -> CMat4 {
    let g = gammas_3d();
    (0..3).fold(g[3].scale(re(m)), |acc, j| acc.add(&g[j].scale(re(xi[j]))))
}

/// P_ν(ξ) = ½(I + νΦ_m(ξ)/φ_m(|ξ|)).
pub fn projection(nu: i32, xi: [f64; 2], m: f64) -> Result<CMat2> {
    if nu != 1 && nu != -1 {
        return Err(Error::Domain(format!("nu must be ±1, got {nu}")));
    }
    let ph = phi(xi[0].hypot(xi[1]), m);
    if !(ph > 0.0) {
        return Err(Error::Domain("P_ν is undefined at ξ = 0 with m = 0".into()));
    }
    let s = dirac_symbol(xi, m).scale(re(nu as f64 / ph));
    Ok(CMat2::identity().add(&s).scale(re(0.5)))
}

/// E_{k,n}^μ(θ) with n = μ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EknMatrix {
    pub k: usize,
    pub mu: i32,
    pub theta: f64,
    pub entries: CMat2,
}

impl EknMatrix {
    pub fn new(k: usize, mu: i32, theta: f64) -> Result<Self> {
        let kf = k as f64;
        let (a, b) = match mu {
            1 => (kf, kf + 1.0),
            -1 => (-(kf + 1.0), -kf),
            _ => return Err(Error::Domain(format!("mu must be ±1, got {mu}"))),
        };
        let n = 1.0 / (2.0 * PI).sqrt();
        let e = |p: f64| Complex64::from_polar(n, p * theta);
        Ok(Self { k, mu, theta, entries: c2(e(a), re(0.0), re(0.0), e(b)) })
    }

    /// Spherical-harmonic degree of each column.
    pub fn column_degrees(&self) -> (usize, usize) {
        if self.mu == 1 {
            (self.k, self.k + 1)
        } else {
            (self.k + 1, self.k)
        }
    }
}

/// Worst entrywise deviation in Φ₀(ξ)E = |ξ|Eσ₁, γ₃E = Eσ₃ and
/// P_ν(ξ)E = EQ_ν(|ξ|) for ν = ±1, at ξ = r(cos θ, sin θ).
pub fn check_intertwining(k: usize, mu: i32, theta: f64, r: f64, m: f64) -> Result<f64> {
    let e = EknMatrix::new(k, mu, theta)?.entries;
    let xi = [r * theta.cos(), r * theta.sin()];
    let g = GammaSet2D::pauli();
    let sigma1: CMat2 = crate::dirac::SIGMA1.into();
    let sigma3: CMat2 = crate::dirac::SIGMA3.into();

    let mut worst = dirac_symbol(xi, 0.0).mul(&e).sub(&e.mul(&sigma1).scale(re(r))).max_abs();
    worst = worst.max(g.g3.mul(&e).sub(&e.mul(&sigma3)).max_abs());
    for nu in [1, -1] {
        let p = projection(nu, xi, m)?;
        let q: CMat2 = q_matrix(nu, r, m)?.into();
        worst = worst.max(p.mul(&e).sub(&e.mul(&q)).max_abs());
    }
    Ok(worst)
}

/// Gram matrix ∫₀^{2π} E(θ)*E(θ) dθ by the trapezoid rule, exact for
/// trigonometric polynomials of degree < `n`.
pub fn column_gram(k: usize, mu: i32, n: usize) -> Result<CMat2> {
    let h = 2.0 * PI / n as f64;
    let mut acc = CMat2::zero();
    for j in 0..n {
        let e = EknMatrix::new(k, mu, j as f64 * h)?.entries;
        acc = acc.add(&e.adjoint().mul(&e));
    }
    Ok(acc.scale(re(h)))
}

/// ½ψ²(r) ∫_{S¹} F̂(r√(2(1 − cos(φ−θ)))) E(φ) dφ for a supplied radial
/// transform `fhat`.
pub fn circle_transform<F: Fn(f64) -> f64>(
    k: usize,
    mu: i32,
    theta: f64,
    r: f64,
    psi_sq: f64,
    fhat: F,
    budget: AccuracyBudget,
) -> Result<CMat2> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::Domain(format!("r must be finite and > 0, got {r}")));
    }
    let e0 = EknMatrix::new(k, mu, theta)?;
    let (da, db) = e0.column_degrees();
    // with φ = θ + α the entries factor as E(θ)·e^{±i·deg·α}; the odd parts cancel
    let mut pts: Vec<f64> = vec![0.0, PI, 2.0 * PI];
    for j in 1..(2 * (k + 1)) {
        pts.push(PI * j as f64 / (k + 1) as f64);
    }
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    let column = |deg: usize| -> Result<Complex64> {
        let kern = |a: f64| fhat(2.0 * r * (0.5 * a).sin());
        let cr = integrate_with_breakpoints(|a| kern(a) * (deg as f64 * a).cos(), &pts, budget)?.value;
        let ci = integrate_with_breakpoints(|a| kern(a) * (deg as f64 * a).sin(), &pts, budget)?.value;
        let sign = if e0.mu == 1 { 1.0 } else { -1.0 };
        Ok(Complex64::new(cr, sign * ci))
    };
    let (ca, cb) = (column(da)?, column(db)?);
    let diag = c2(ca, re(0.0), re(0.0), cb);
    Ok(e0.entries.mul(&diag).scale(re(0.5 * psi_sq)))
}

/// Relative deviation between the circle integral and E(θ)·diag(λ_a, λ_b),
/// where a, b are the column degrees and λ comes from the Bessel route.
pub fn funk_hecke_circle(k: usize, mu: i32, pair: &WeightPair, r: f64) -> Result<f64> {
    if !pair.has_fhat(2) {
        return Err(Error::Unavailable(format!("no closed-form transform for {} in d = 2", pair.id())));
    }
    let budget = AccuracyBudget::new(1e-12, 1e-300)?;
    let theta = 0.37;
    let lhs = circle_transform(k, mu, theta, r, pair.psi_sq(r), |rho| {
        pair.fhat_closed(2, rho).unwrap_or(f64::NAN)
    }, budget)?;
    let e = EknMatrix::new(k, mu, theta)?;
    let (da, db) = e.column_degrees();
    let la = lambda_k_bessel(da, 2, r, pair, budget)?;
    let lb = lambda_k_bessel(db, 2, r, pair, budget)?;
    let rhs = e.entries.mul(&c2(re(la), re(0.0), re(0.0), re(lb)));
    let scale = rhs.max_abs().max(f64::MIN_POSITIVE);
    Ok(lhs.sub(&rhs).max_abs() / scale)
}

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{dirac_combine, phi};
use crate::lambda::{log_grid, LambdaQuery, Route};
use crate::quadrature::wynn_epsilon;
use crate::report::{sig17, CaseDescriptor, ConstantReport};
use crate::specfun::AccuracyBudget;
use crate::weights::{fhat_nonneg_all_dims, WeightPair};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Equation {
    Schrodinger,
    Dirac { m: f64 },
}

/// Where a sup lives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Attainment {
    Interior,
    BoundaryLimit,
    FlatInterval,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RStar {
    At(#[serde(with = "sig17")] f64),
    ZeroLimit,
    InfinityLimit,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub r_min: f64,
    pub r_max: f64,
    pub grid_points: usize,
    pub k_max: usize,
    /// Relative tolerance in r for golden-section refinement.
    pub r_tol: f64,
    /// Relative closeness to the max that counts as flat.
    pub flat_tol: f64,
    /// Consecutive grid points needed for a flat interval.
    pub flat_run: usize,
    /// Decades sampled beyond each end of the grid for boundary limits.
    pub boundary_decades: usize,
    /// Relative slack in the Dirac stop rule sup_k λ̃_k ≥ 2 sup λ₀; bounds the
    /// possible underestimate when it fires.
    pub stop_tol: f64,
    pub route: Route,
    pub budget: AccuracyBudget,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            r_min: 1e-3,
            r_max: 1e3,
            grid_points: 241,
            k_max: 64,
            r_tol: 1e-10,
            flat_tol: 1e-9,
            flat_run: 10,
            boundary_decades: 8,
            stop_tol: 1e-7,
            route: Route::Auto,
            budget: AccuracyBudget::default(),
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.r_min > 0.0 && self.r_min < self.r_max && self.r_max.is_finite()) {
            return Err(Error::Invalid(format!("bad r range [{}, {}]", self.r_min, self.r_max)));
        }
        if self.grid_points < 3 {
            return Err(Error::Invalid("need at least 3 grid points".into()));
        }
        if !(self.stop_tol >= 0.0 && self.stop_tol < 1.0) {
            return Err(Error::Invalid(format!("stop_tol must lie in [0, 1), got {}", self.stop_tol)));
        }
        if self.k_max < 1 {
            return Err(Error::Invalid("k_max must be >= 1".into()));
        }
        Ok(())
    }

    pub fn grid(&self) -> Vec<f64> {
        log_grid(self.r_min, self.r_max, self.grid_points)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SupResult {
    pub value: f64,
    pub k_star: usize,
    pub r_star: RStar,
    pub attained: Attainment,
    /// Fraction of grid points within the flat tolerance of the sup.
    pub profile_flatness: f64,
    /// Largest sampled value on the grid itself.
    pub grid_max: f64,
    pub warnings: Vec<String>,
}

/// Per-k summary kept in reports.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KSup {
    pub k: usize,
    #[serde(with = "sig17")]
    pub value: f64,
    pub r_star: RStar,
    pub attained: Attainment,
}

impl From<&SupResult> for KSup {
    fn from(s: &SupResult) -> Self {
        Self { k: s.k_star, value: s.value, r_star: s.r_star, attained: s.attained }
    }
}

// Keep the best estimate of an integral that missed its tolerance.
fn soften(res: Result<f64>, r: f64, warnings: &mut Vec<String>) -> Result<f64> {
    match res {
        Ok(v) => Ok(v),
        Err(Error::NoConvergence { best, error }) => {
            warnings.push(format!("r = {r:e}: quadrature error {error:e} above tolerance"));
            Ok(best)
        }
        Err(e) => Err(e),
    }
}

fn eval_many<F>(f: &F, rs: &[f64], warnings: &mut Vec<String>) -> Result<Vec<f64>>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    let raw: Vec<Result<f64>> = rs.par_iter().map(|&r| f(r)).collect();
    raw.into_iter().zip(rs).map(|(v, &r)| soften(v, r, warnings)).collect()
}

// Golden-section search for a max of f over [a, b] in log r.
fn golden_max<F>(f: &F, a: f64, b: f64, tol: f64, warnings: &mut Vec<String>) -> Result<(f64, f64)>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let (mut lo, mut hi) = (a.ln(), b.ln());
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let mut f1 = soften(f(x1.exp()), x1.exp(), warnings)?;
    let mut f2 = soften(f(x2.exp()), x2.exp(), warnings)?;
    while hi - lo > tol {
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = soften(f(x1.exp()), x1.exp(), warnings)?;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = soften(f(x2.exp()), x2.exp(), warnings)?;
        }
    }
    Ok(if f1 >= f2 { (x1.exp(), f1) } else { (x2.exp(), f2) })
}

// Limit of f along r·10^{±j}, accelerated.
fn boundary_limit<F>(f: &F, edge: f64, outward: f64, decades: usize, warnings: &mut Vec<String>) -> Result<f64>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    let rs: Vec<f64> = (0..=decades).map(|j| edge * outward.powi(j as i32)).collect();
    let seq = eval_many(f, &rs, warnings)?;
    let (est, err) = wynn_epsilon(&seq);
    let last = *seq.last().unwrap();
    if !est.is_finite() || err > 1e-6 * est.abs().max(last.abs()) {
        warnings.push(format!(
            "boundary extrapolation toward r = {} is unreliable (error {err:e}); using the last sample",
            if outward < 1.0 { "0" } else { "inf" }
        ));
        return Ok(last);
    }
    Ok(est)
}

/// sup over r > 0 of a profile, given its grid values.
fn sup_from_grid<F>(f: &F, k: usize, grid: &[f64], vals: &[f64], cfg: &SearchConfig) -> Result<SupResult>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    let n = grid.len();
    let mut warnings = Vec::new();
    let (imax, gmax) = vals
        .iter()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |acc, (i, &v)| if v > acc.1 { (i, v) } else { acc });
    let near_top = |v: f64| v >= gmax - 1e-6 * gmax.abs();

    // boundary limits where the profile climbs toward an end
    let left = if vals[0] >= vals[1] || near_top(vals[0]) {
        Some(boundary_limit(f, grid[0], 0.1, cfg.boundary_decades, &mut warnings)?)
    } else {
        None
    };
    let right = if vals[n - 1] >= vals[n - 2] || near_top(vals[n - 1]) {
        Some(boundary_limit(f, grid[n - 1], 10.0, cfg.boundary_decades, &mut warnings)?)
    } else {
        None
    };

    let run_len = |level: f64| {
        let thr = level - cfg.flat_tol * level.abs();
        let (mut best, mut start, mut cur) = (0usize, 0usize, 0usize);
        for (i, &v) in vals.iter().enumerate() {
            if v >= thr {
                cur += 1;
                if cur > best {
                    best = cur;
                    start = i + 1 - cur;
                }
            } else {
                cur = 0;
            }
        }
        (best, start)
    };

    // refine interior local maxima near the top unless the top is flat
    let mut interior = (grid[imax], gmax);
    if run_len(gmax).0 < cfg.flat_run {
        let mut cands: Vec<usize> = (1..n - 1)
            .filter(|&i| vals[i] >= vals[i - 1] && vals[i] >= vals[i + 1] && near_top(vals[i]))
            .collect();
        cands.sort_by(|&a, &b| vals[b].total_cmp(&vals[a]).then(a.cmp(&b)));
        cands.truncate(4);
        for i in cands {
            let (r, v) = golden_max(f, grid[i - 1], grid[i + 1], cfg.r_tol, &mut warnings)?;
            if v > interior.1 {
                interior = (r, v);
            }
        }
    }

    let mut value = interior.1;
    let mut r_star = RStar::At(interior.0);
    let mut attained = Attainment::Interior;
    let margin = |v: f64| v > interior.1 + 1e-12 * interior.1.abs();
    if let Some(l) = left {
        if margin(l) && l >= value {
            value = l;
            r_star = RStar::ZeroLimit;
            attained = Attainment::BoundaryLimit;
        }
    }
    if let Some(rt) = right {
        if margin(rt) && rt > value {
            value = rt;
            r_star = RStar::InfinityLimit;
            attained = Attainment::BoundaryLimit;
        }
    }
    let (run, start) = run_len(value);
    if run >= cfg.flat_run {
        attained = Attainment::FlatInterval;
        r_star = RStar::At(grid[start + run / 2]);
        value = value.max(gmax);
    }
    let within = vals.iter().filter(|&&v| v >= value - cfg.flat_tol * value.abs()).count();
    Ok(SupResult {
        value,
        k_star: k,
        r_star,
        attained,
        profile_flatness: within as f64 / n as f64,
        grid_max: gmax,
        warnings,
    })
}

/// sup over r > 0 of `f`: log-grid scan, golden refinement of local maxima and
/// extrapolated limits at both ends.
pub fn sup_over_r<F>(f: F, k: usize, cfg: &SearchConfig) -> Result<SupResult>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    cfg.validate()?;
    let grid = cfg.grid();
    let mut warnings = Vec::new();
    let vals = eval_many(&f, &grid, &mut warnings)?;
    let mut res = sup_from_grid(&f, k, &grid, &vals, cfg)?;
    warnings.append(&mut res.warnings);
    res.warnings = warnings;
    Ok(res)
}

struct Profiles<'a> {
    d: usize,
    pair: &'a WeightPair,
    route: Route,
    budget: AccuracyBudget,
    grid: Vec<f64>,
    rows: Vec<Vec<f64>>,
    warnings: Vec<String>,
}

impl Profiles<'_> {
    fn lambda(&self, k: usize, r: f64) -> Result<f64> {
        LambdaQuery { k, d: self.d, r, pair: self.pair, route: self.route }.eval(self.budget)
    }

    fn row(&mut self, k: usize) -> Result<&[f64]> {
        while self.rows.len() <= k {
            let j = self.rows.len();
            let raw: Vec<Result<f64>> = self.grid.par_iter().map(|&r| self.lambda(j, r)).collect();
            let mut row = Vec::with_capacity(raw.len());
            for (v, &r) in raw.into_iter().zip(&self.grid) {
                row.push(soften(v, r, &mut self.warnings)?);
            }
            self.rows.push(row);
        }
        Ok(&self.rows[k])
    }
}

/// Optimal constant A (Schrödinger) or Ã_m (Dirac), divided by (2π)^{d−1}.
pub fn optimal_constant(d: usize, eq: Equation, pair: &WeightPair, cfg: &SearchConfig) -> Result<ConstantReport> {
    cfg.validate()?;
    pair.validate_for_dimension(d)?;
    if let Equation::Dirac { m } = eq {
        if !(m >= 0.0) || !m.is_finite() {
            return Err(Error::Domain(format!("mass must be finite and >= 0, got {m}")));
        }
    }
    let norm = (2.0 * PI).powi(d as i32 - 1);
    let nonneg = fhat_nonneg_all_dims(pair, d, 0);
    let nonneg_all = fhat_nonneg_all_dims(pair, d, 4);
    let mut prof = Profiles {
        d,
        pair,
        route: cfg.route,
        budget: cfg.budget,
        grid: cfg.grid(),
        rows: Vec::new(),
        warnings: Vec::new(),
    };
    let mut warnings = Vec::new();
    let mut k_profile: Vec<SupResult> = Vec::new();
    let mut schro: Vec<SupResult> = Vec::new();
    let mut decreasing = 0;
    let mut stopped = false;

    for k in 0..=cfg.k_max {
        let res = match eq {
            Equation::Schrodinger => {
                let vals = prof.row(k)?.to_vec();
                let p = &prof;
                let f = |r: f64| p.lambda(k, r);
                sup_from_grid(&f, k, &p.grid, &vals, cfg)?
            }
            Equation::Dirac { m } => {
                let a = prof.row(k)?.to_vec();
                let b = prof.row(k + 1)?.to_vec();
                let p = &prof;
                let vals: Vec<f64> =
                    p.grid.iter().zip(a.iter().zip(&b)).map(|(&r, (&x, &y))| dirac_combine(x, y, r, m)).collect();
                let f = |r: f64| -> Result<f64> {
                    let x = p.lambda(k, r)?;
                    let y = p.lambda(k + 1, r)?;
                    Ok(x + y + m / phi(r, m) * (x - y).abs())
                };
                if k == 0 {
                    let g = |r: f64| p.lambda(0, r);
                    schro.push(sup_from_grid(&g, 0, &p.grid, &a, cfg)?);
                }
                sup_from_grid(&f, k, &p.grid, &vals, cfg)?
            }
        };
        if let Some(prev) = k_profile.last() {
            // ties count: flat limits shared by all k must not stall the search
            if res.value <= prev.value * (1.0 + 1e-9) {
                decreasing += 1;
            } else {
                decreasing = 0;
            }
        }
        warnings.extend(res.warnings.iter().map(|w| format!("k = {k}: {w}")));
        k_profile.push(res);
        let best = k_profile.iter().map(|s| s.value).fold(f64::NEG_INFINITY, f64::max);

        // λ_k ≤ λ₀ once F̂ ≥ 0
        if nonneg && eq == Equation::Schrodinger && k >= 1 {
            stopped = true;
            break;
        }
        // λ̃_k ≤ 2 max(λ_k, λ_{k+1}) ≤ 2λ₀ once F̂ ≥ 0
        if nonneg && matches!(eq, Equation::Dirac { .. }) && best >= 2.0 * schro[0].value * (1.0 - cfg.stop_tol) {
            stopped = true;
            break;
        }
        if nonneg_all && decreasing >= 3 {
            stopped = true;
            break;
        }
    }
    warnings.append(&mut prof.warnings);
    if !stopped {
        warnings.push(format!(
            "k truncated at k_max = {} without a justified stop; the constant may be underestimated",
            cfg.k_max
        ));
    }

    let best = k_profile
        .iter()
        .fold(None::<&SupResult>, |acc, s| match acc {
            Some(b) if b.value >= s.value => Some(b),
            _ => Some(s),
        })
        .unwrap();
    let computed = best.value / norm;
    let attainment = best.attained;

    if let Equation::Dirac { .. } = eq {
        // A ≤ Ã ≤ 2A, with A from the λ_k already sampled
        let computed_rows = prof.rows.len();
        for k in 1..computed_rows {
            let vals = prof.rows[k].clone();
            let p = &prof;
            let g = |r: f64| p.lambda(k, r);
            schro.push(sup_from_grid(&g, k, &p.grid, &vals, cfg)?);
        }
        let a = schro.iter().map(|s| s.value).fold(f64::NEG_INFINITY, f64::max) / norm;
        if computed < a * (1.0 - 1e-6) || computed > 2.0 * a * (1.0 + 1e-6) {
            warnings.push(format!("sandwich A <= Ã <= 2A violated: A = {a}, Ã = {computed}"));
        }
    }

    Ok(ConstantReport {
        case: CaseDescriptor::new(eq, d, pair),
        computed,
        closed_form: None,
        bounds: None,
        discrepancy: None,
        attainment,
        k_profile: k_profile.iter().map(|s| KSup { value: s.value / norm, ..KSup::from(s) }).collect(),
        warnings,
    })
}

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::QuadResult;
use crate::specfun::AccuracyBudget;
use crate::{Error, Result};

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

#[derive(Debug, Clone, Copy)]
pub(crate) struct Panel {
    pub a: f64,
    pub b: f64,
    pub value: f64,
    pub error: f64,
    pub resabs: f64,
}

fn rescale_error(err: f64, resabs: f64, resasc: f64) -> f64 {
    let mut e = err.abs();
    if resasc != 0.0 && e != 0.0 {
        let scale = (200.0 * e / resasc).powf(1.5);
        e = if scale < 1.0 { resasc * scale } else { resasc };
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        e = e.max(50.0 * f64::EPSILON * resabs);
    }
    e
}

/// One 21-point Gauss–Kronrod panel.
pub(crate) fn qk21<F: Fn(f64) -> f64 + ?Sized>(f: &F, a: f64, b: f64) -> Panel {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut resg = 0.0;
    let mut resk = fc * WGK[10];
    let mut resabs = resk.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let x = h * XGK[j];
        let f1 = f(c - x);
        let f2 = f(c + x);
        fv1[j] = f1;
        fv2[j] = f2;
        if j % 2 == 1 {
            resg += WG[j / 2] * (f1 + f2);
        }
        resk += WGK[j] * (f1 + f2);
        resabs += WGK[j] * (f1.abs() + f2.abs());
    }
    let mean = 0.5 * resk;
    let mut resasc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        resasc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let value = resk * h;
    let resabs = resabs * h.abs();
    let resasc = resasc * h.abs();
    let error = rescale_error((resk - resg) * h, resabs, resasc);
    Panel { a, b, value, error, resabs }
}

struct Entry(Panel);

impl PartialEq for Entry {
    fn eq(&self, other: &Self) -> bool {
        self.0.error == other.0.error
    }
}
impl Eq for Entry {}
impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.error.total_cmp(&other.0.error)
    }
}

/// Globally adaptive GK21 over consecutive panels given by `points`.
pub(crate) fn adaptive<F: Fn(f64) -> f64 + ?Sized>(
    f: &F,
    points: &[f64],
    budget: AccuracyBudget,
    max_splits: usize,
) -> Result<QuadResult> {
    let mut heap = BinaryHeap::new();
    let mut total = 0.0;
    let mut total_err = 0.0;
    let mut total_abs = 0.0;
    let mut evals = 0;
    for w in points.windows(2) {
        if w[1] == w[0] {
            continue;
        }
        let p = qk21(f, w[0], w[1]);
        evals += 21;
        total += p.value;
        total_err += p.error;
        total_abs += p.resabs;
        heap.push(Entry(p));
    }
    // panel errors never drop below 50ε∫|f|, so neither may the target
    let floor = 64.0 * f64::EPSILON * total_abs;
    let target = |v: f64| budget.abs_tol.max(budget.rel_tol * v.abs()).max(floor);
    let mut frozen_err = 0.0;
    let mut frozen_value = 0.0;
    let mut splits = 0;
    loop {
        if !total.is_finite() || !total_err.is_finite() {
            return Err(Error::Domain("integrand is not finite on the interval".into()));
        }
        if total_err <= target(total) {
            // the running sums drift; confirm against a fresh sum
            total = frozen_value + heap.iter().map(|e| e.0.value).sum::<f64>();
            total_err = frozen_err + heap.iter().map(|e| e.0.error).sum::<f64>();
            if total_err <= target(total) {
                break;
            }
        }
        let Some(Entry(p)) = heap.pop() else {
            break;
        };
        let mid = 0.5 * (p.a + p.b);
        if splits >= max_splits {
            heap.push(Entry(p));
            return Err(Error::NoConvergence { best: total, error: total_err });
        }
        if (p.b - p.a).abs() <= 1e-13 * mid.abs().max(1e-300) || mid == p.a || mid == p.b {
            // cannot be refined further in double precision
            frozen_err += p.error;
            frozen_value += p.value;
            if heap.is_empty() {
                break;
            }
            continue;
        }
        let l = qk21(f, p.a, mid);
        let r = qk21(f, mid, p.b);
        evals += 42;
        splits += 1;
        total += l.value + r.value - p.value;
        total_err += l.error + r.error - p.error;
        heap.push(Entry(l));
        heap.push(Entry(r));
    }
    let mut value = frozen_value;
    let mut err = frozen_err;
    for Entry(p) in heap.iter() {
        value += p.value;
        err += p.error;
    }
    if err > target(value) * 1.000_001 {
        return Err(Error::NoConvergence { best: value, error: err });
    }
    Ok(QuadResult { value, error_estimate: err.max(0.0), evaluations: evals })
}

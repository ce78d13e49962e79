//! Constant reports: engine output next to closed forms and bounds, as JSON.

use serde::{Deserialize, Serialize};

use crate::closedform;
use crate::dirac::{optimal_constant, Attainment, Equation, KSup, SearchConfig};
use crate::weights::WeightPair;
use crate::Result;

/// Floats are written with 17 significant digits so that parsing them back
/// is exact.
pub(crate) mod sig17 {
    use serde::de::Deserializer;
    use serde::ser::{Error as _, Serializer};
    use serde::{Deserialize, Serialize};
    use serde_json::value::RawValue;

    pub fn raw(v: f64) -> Result<Box<RawValue>, serde_json::Error> {
        if !v.is_finite() {
            return Err(serde_json::Error::custom(format!("non-finite value {v}")));
        }
        RawValue::from_string(format!("{v:.16e}"))
    }

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        raw(*v).map_err(S::Error::custom)?.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        f64::deserialize(d)
    }

    pub mod opt {
        use super::*;

        pub fn serialize<S: Serializer>(v: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
            match v {
                Some(x) => super::serialize(x, s),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<f64>, D::Error> {
            Option::<f64>::deserialize(d)
        }
    }

    pub mod opt_pair {
        use super::*;

        pub fn serialize<S: Serializer>(v: &Option<(f64, f64)>, s: S) -> Result<S::Ok, S::Error> {
            match v {
                Some((a, b)) => [raw(*a).map_err(S::Error::custom)?, raw(*b).map_err(S::Error::custom)?].serialize(s),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<(f64, f64)>, D::Error> {
            Option::<(f64, f64)>::deserialize(d)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseDescriptor {
    /// `schrodinger` or `dirac`
    pub equation: String,
    #[serde(with = "sig17::opt")]
    pub m: Option<f64>,
    pub d: usize,
    pub pair: String,
    pub psi_sq: String,
}

impl CaseDescriptor {
    pub fn new(eq: Equation, d: usize, pair: &WeightPair) -> Self {
        let (equation, m) = match eq {
            Equation::Schrodinger => ("schrodinger".to_string(), None),
            Equation::Dirac { m } => ("dirac".to_string(), Some(m)),
        };
        Self { equation, m, d, pair: pair.id(), psi_sq: pair.psi_sq.label() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstantReport {
    pub case: CaseDescriptor,
    /// The optimal constant A or Ã, already divided by (2π)^{d−1}.
    #[serde(with = "sig17")]
    pub computed: f64,
    #[serde(with = "sig17::opt")]
    pub closed_form: Option<f64>,
    #[serde(with = "sig17::opt_pair")]
    pub bounds: Option<(f64, f64)>,
    #[serde(with = "sig17::opt")]
    pub discrepancy: Option<f64>,
    pub attainment: Attainment,
    pub k_profile: Vec<KSup>,
    pub warnings: Vec<String>,
}

impl ConstantReport {
    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| crate::Error::Invalid(e.to_string()))
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| crate::Error::Invalid(e.to_string()))
    }

    /// Attach a closed form and recompute the discrepancy.
    pub fn with_closed_form(mut self, value: f64) -> Self {
        self.closed_form = Some(value);
        self.discrepancy = Some((self.computed - value).abs() / value.abs().max(f64::EPSILON));
        self
    }

    /// Attach bounds, warning when the computed value falls outside.
    pub fn with_bounds(mut self, lower: f64, upper: f64) -> Self {
        self.bounds = Some((lower, upper));
        let slack = 1e-6 * self.computed.abs();
        if self.computed < lower - slack || self.computed > upper + slack {
            self.warnings.push(format!(
                "computed value {} lies outside the bracket [{lower}, {upper}]",
                self.computed
            ));
        }
        self
    }
}

/// Run the engine and attach whatever closed form or bracket is known.
pub fn build_report(eq: Equation, d: usize, pair: &WeightPair, cfg: &SearchConfig) -> Result<ConstantReport> {
    let mut rep = optimal_constant(d, eq, pair, cfg)?;
    match closedform::lookup(eq, d, pair) {
        Ok(Some(closedform::Known::Value(v))) => rep = rep.with_closed_form(v),
        Ok(Some(closedform::Known::Bracket(lo, hi))) => rep = rep.with_bounds(lo, hi),
        Ok(None) => {}
        Err(e) => rep.warnings.push(format!("closed form unavailable: {e}")),
    }
    Ok(rep)
}

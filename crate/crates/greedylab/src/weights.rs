//! Weight functions `f: N -> R` used for rank-weighted indicators, the
//! `D_m^f` functional, and sparseness partners.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Supported weight-function shapes. `Power { q }` is `n^(-q)`; `Linear`
/// covers the growing sparseness partners such as `n/2` and `2n/3`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "param", rename_all = "snake_case")]
pub enum WeightFunction {
    Constant(f64),
    Alternating,
    Reciprocal,
    Power(f64),
    Geometric(f64),
    Linear(f64),
    Table(Vec<f64>),
}

impl WeightFunction {
    /// Evaluate at `n >= 1`. Table lookups beyond the stored length are 0.
    pub fn eval(&self, n: u64) -> f64 {
        debug_assert!(n >= 1);
        match self {
            WeightFunction::Constant(c) => *c,
            WeightFunction::Alternating => {
                if n.is_multiple_of(2) {
                    1.0
                } else {
                    -1.0
                }
            }
            WeightFunction::Reciprocal => 1.0 / n as f64,
            WeightFunction::Power(q) => (n as f64).powf(-q),
            WeightFunction::Geometric(r) => {
                // powi keeps negative ratios exact; huge exponents saturate
                // through powf on the magnitude.
                if n <= i32::MAX as u64 {
                    r.powi(n as i32)
                } else {
                    let magnitude = r.abs().powf(n as f64);
                    if *r < 0.0 && !n.is_multiple_of(2) {
                        -magnitude
                    } else {
                        magnitude
                    }
                }
            }
            WeightFunction::Linear(a) => a * n as f64,
            WeightFunction::Table(values) => values.get(n as usize - 1).copied().unwrap_or(0.0),
        }
    }

    /// Evaluate `ln f(n)` from `ln n`, for arguments far beyond the integer
    /// range. Only meaningful for the monotone unbounded kinds; others give
    /// back `None`.
    pub fn ln_eval(&self, ln_n: f64) -> Option<f64> {
        match self {
            WeightFunction::Constant(c) if *c > 0.0 => Some(c.ln()),
            WeightFunction::Reciprocal => Some(-ln_n),
            WeightFunction::Power(q) => Some(-q * ln_n),
            WeightFunction::Geometric(r) if *r > 0.0 => Some(ln_n.exp() * r.ln()),
            WeightFunction::Linear(a) if *a > 0.0 => Some(a.ln() + ln_n),
            _ => None,
        }
    }

    /// Regularity bounds `0 < c1 <= |f(n)| <= c2`, when the kind guarantees
    /// them. Unbounded or vanishing kinds return `None`.
    pub fn regularity(&self) -> Option<(f64, f64)> {
        match self {
            WeightFunction::Constant(c) if *c != 0.0 => Some((c.abs(), c.abs())),
            WeightFunction::Alternating => Some((1.0, 1.0)),
            WeightFunction::Geometric(r) if *r == 1.0 || *r == -1.0 => Some((1.0, 1.0)),
            WeightFunction::Table(values) if !values.is_empty() => {
                let lo = values.iter().fold(f64::INFINITY, |a, v| a.min(v.abs()));
                let hi = values.iter().fold(0.0f64, |a, v| a.max(v.abs()));
                (lo > 0.0).then_some((lo, hi))
            }
            _ => None,
        }
    }
}

impl fmt::Display for WeightFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightFunction::Constant(c) => write!(f, "constant:{c}"),
            WeightFunction::Alternating => write!(f, "alternating"),
            WeightFunction::Reciprocal => write!(f, "reciprocal"),
            WeightFunction::Power(q) => write!(f, "power:{q}"),
            WeightFunction::Geometric(r) => write!(f, "geometric:{r}"),
            WeightFunction::Linear(a) => write!(f, "linear:{a}"),
            WeightFunction::Table(values) => {
                write!(f, "table:")?;
                for (i, v) in values.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{v}")?;
                }
                Ok(())
            }
        }
    }
}

/// Parses the CLI shape `KIND[:PARAM]`, e.g. `power:0.5` for `n^(-1/2)`,
/// `geometric:0.5` for `2^(-n)`, `linear:0.5` for `n/2`.
impl FromStr for WeightFunction {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let (kind, param) = match text.split_once(':') {
            Some((k, p)) => (k.trim(), Some(p.trim())),
            None => (text.trim(), None),
        };
        let num = |p: Option<&str>| -> Result<f64> {
            p.ok_or_else(|| Error::Parse(format!("weight kind `{kind}` needs a parameter")))?
                .parse::<f64>()
                .map_err(|e| Error::Parse(format!("bad weight parameter: {e}")))
        };
        match kind {
            "constant" => Ok(WeightFunction::Constant(num(param)?)),
            "alternating" => Ok(WeightFunction::Alternating),
            "reciprocal" => Ok(WeightFunction::Reciprocal),
            "power" => Ok(WeightFunction::Power(num(param)?)),
            "geometric" => Ok(WeightFunction::Geometric(num(param)?)),
            "linear" => Ok(WeightFunction::Linear(num(param)?)),
            "table" => {
                let values = param
                    .ok_or_else(|| Error::Parse("table weight needs values".into()))?
                    .split(',')
                    .map(|v| v.trim().parse::<f64>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|e| Error::Parse(format!("bad table value: {e}")))?;
                Ok(WeightFunction::Table(values))
            }
            other => Err(Error::Parse(format!("unknown weight kind `{other}`"))),
        }
    }
}

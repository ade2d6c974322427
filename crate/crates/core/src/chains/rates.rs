use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::Error;

/// Rate functions of the step index: `c`, `c*n^-a` or `c*(1+1/n)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "form", rename_all = "lowercase")]
pub enum Rate {
    Const { c: f64 },
    Power { c: f64, a: f64 },
    Shifted { c: f64 },
}

impl Rate {
    /// Value at step `n`; `n = 0` is evaluated as `n = 1`.
    pub fn at(&self, n: u64) -> f64 {
        let x = n.max(1) as f64;
        match *self {
            Rate::Const { c } => c,
            Rate::Power { c, a } => c * x.powf(-a),
            Rate::Shifted { c } => c * (1.0 + 1.0 / x),
        }
    }

    /// Limit as `n → ∞`.
    pub fn limit(&self) -> f64 {
        match *self {
            Rate::Const { c } | Rate::Shifted { c } => c,
            Rate::Power { a, .. } if a > 0.0 => 0.0,
            Rate::Power { c, a } if a == 0.0 => c,
            Rate::Power { .. } => f64::INFINITY,
        }
    }
}

impl fmt::Display for Rate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Rate::Const { c } => write!(f, "{c}"),
            Rate::Power { c, a } => write!(f, "{c}*n^-{a}"),
            Rate::Shifted { c } => write!(f, "{c}*(1+1/n)"),
        }
    }
}

fn number(s: &str, whole: &str) -> Result<f64, Error> {
    s.trim()
        .parse::<f64>()
        .ok()
        .filter(|x| x.is_finite())
        .ok_or_else(|| Error::InvalidParameter(format!("bad rate expression `{whole}`")))
}

impl FromStr for Rate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if let Some(c) = t.strip_suffix("*(1+1/n)") {
            return Ok(Rate::Shifted { c: number(c, s)? });
        }
        if let Some((c, a)) = t.split_once("*n^-") {
            let a = a.trim_start_matches('(').trim_end_matches(')');
            return Ok(Rate::Power { c: number(c, s)?, a: number(a, s)? });
        }
        Ok(Rate::Const { c: number(&t, s)? })
    }
}

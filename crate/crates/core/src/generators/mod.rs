//! Samplers for the preferential attachment models.
//!
//! Both attachment rules grow `G_1 ⊂ G_2 ⊂ …` where `G_1` is a single vertex and
//! vertex `w` arrives with `m` edges to older vertices. With probability `α`
//! (or `α_w(i)` in the sequential rule) an endpoint is uniform, otherwise it is
//! chosen proportionally to degree.

mod attachment;
mod polya_tree;
mod urn;

pub use attachment::{generate, generate_classical, generate_sequential, sequential_alpha};
pub use polya_tree::{sample_polya_point_tree, NodeTag, PolyaNode, PolyaPointTree};
pub use urn::{generate_from_weights, sample_polya_weights, PolyaWeights};

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AttachmentRule {
    /// All `m` endpoints drawn independently from frozen degrees.
    Classical,
    /// Endpoints drawn one by one with degree updates in between.
    Sequential,
}

impl fmt::Display for AttachmentRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AttachmentRule::Classical => "classical",
            AttachmentRule::Sequential => "sequential",
        })
    }
}

impl FromStr for AttachmentRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "classical" => Ok(AttachmentRule::Classical),
            "sequential" => Ok(AttachmentRule::Sequential),
            other => Err(Error::InvalidParameter(format!("unknown model `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelConfig {
    pub kind: AttachmentRule,
    pub n: usize,
    pub m: usize,
    pub alpha: f64,
    pub seed: u64,
}

impl ModelConfig {
    pub fn new(kind: AttachmentRule, n: usize, m: usize, alpha: f64, seed: u64) -> Self {
        ModelConfig { kind, n, m, alpha, seed }
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.alpha) {
            return Err(Error::InvalidParameter(format!("alpha must lie in [0, 1], got {}", self.alpha)));
        }
        if self.m == 0 {
            return Err(Error::InvalidParameter("m must be >= 1".into()));
        }
        if self.n == 0 {
            return Err(Error::InvalidParameter("n must be >= 1".into()));
        }
        Ok(())
    }

    pub fn with_n(&self, n: usize) -> Self {
        ModelConfig { n, ..self.clone() }
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        ModelConfig { seed, ..self.clone() }
    }
}

/// The constants `u = α/(1-α)` and `χ = (1+2u)/(2+2u)`.
///
/// `u` is `None` (infinite) in the uniform attachment case `α = 1`, where `χ`
/// is taken to be 1.
#[derive(Clone, Debug, PartialEq)]
pub struct ModelConstants<T> {
    pub u: Option<T>,
    pub chi: T,
}

impl<T: Scalar> ModelConstants<T> {
    /// Exponent `(1-χ)/χ` of the Pólya-point intensity.
    pub fn intensity_exponent(&self) -> T {
        (T::one() - self.chi.clone()) / self.chi.clone()
    }

    pub fn is_uniform(&self) -> bool {
        self.u.is_none()
    }
}

pub fn model_constants<T: Scalar>(alpha: T) -> Result<ModelConstants<T>> {
    if alpha < T::zero() || alpha > T::one() {
        return Err(Error::InvalidParameter(format!("alpha must lie in [0, 1], got {alpha:?}")));
    }
    if alpha == T::one() {
        return Ok(ModelConstants { u: None, chi: T::one() });
    }
    let u = alpha.clone() / (T::one() - alpha);
    let two = T::from_int(2);
    let chi = (T::one() + two.clone() * u.clone()) / (two.clone() + two * u.clone());
    Ok(ModelConstants { u: Some(u), chi })
}

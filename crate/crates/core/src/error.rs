use thiserror::Error;

use crate::multigraph::Vertex;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: Vertex, n: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("graph file line {line}: {msg}")]
    GraphFormat { line: usize, msg: String },

    #[error(transparent)]
    Parse(#[from] crate::logic::ParseError),

    #[error("input contains a cycle")]
    Cyclic,

    #[error("transition probabilities out of range at step {step}: p(n) = {up}, K*M_n/(n+1) = {down}")]
    ProbabilityOverflow { step: u64, up: f64, down: f64 },

    #[error("normalization did not converge: tail mass {tail} at cutoff {cutoff}")]
    NonConvergent { cutoff: usize, tail: f64 },

    #[error("infeasible evaluation: estimated cost {cost:.3e} exceeds budget {budget:.3e}")]
    Infeasible { cost: f64, budget: f64 },

    #[error("table format: {0}")]
    TableFormat(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

//! First-order sentences over the multigraph signature: equality and the
//! family `adjk(x, y, j)` ("joined by at least `j` parallel edges").
//!
//! Concrete syntax:
//!
//! ```text
//! forall v. φ     exists v. φ     !φ     φ & ψ     φ | ψ     φ -> ψ     φ <-> ψ
//! v = w           adj(v, w)       adjk(v, w, j)   adj2(v, w)
//! ```
//!
//! Precedence from tightest: `!`, `&`, `|`, `->` (right associative), `<->`.
//! Quantifier bodies extend as far to the right as possible.

mod ast;
mod eval;
mod parser;
mod sample;

pub use ast::{Formula, Sentence};
pub use eval::{estimate_cost, evaluate, evaluate_formula, Evaluator};
pub use parser::{parse, parse_formula, ParseError};
pub use sample::sample_sentence;

/// Quantifier rank of a formula.
pub fn quantifier_rank(f: &Formula) -> usize {
    f.quantifier_rank()
}

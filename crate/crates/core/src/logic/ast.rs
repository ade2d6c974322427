use std::collections::BTreeSet;
use std::fmt;

use super::parser::{ParseError, ParseErrorKind};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Eq(String, String),
    /// At least `j >= 1` parallel edges between the two vertices.
    Adj(String, String, u32),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Forall(String, Box<Formula>),
    Exists(String, Box<Formula>),
}

impl Formula {
    pub fn eq(a: &str, b: &str) -> Self {
        Formula::Eq(a.into(), b.into())
    }

    pub fn adj(a: &str, b: &str) -> Self {
        Formula::Adj(a.into(), b.into(), 1)
    }

    pub fn adjk(a: &str, b: &str, j: u32) -> Self {
        Formula::Adj(a.into(), b.into(), j)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Self {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    pub fn forall(v: &str, body: Formula) -> Self {
        Formula::Forall(v.into(), Box::new(body))
    }

    pub fn exists(v: &str, body: Formula) -> Self {
        Formula::Exists(v.into(), Box::new(body))
    }

    /// `qr(atomic) = 0`, connectives take the maximum, quantifiers add one.
    pub fn quantifier_rank(&self) -> usize {
        match self {
            Formula::Eq(..) | Formula::Adj(..) => 0,
            Formula::Not(f) => f.quantifier_rank(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.quantifier_rank().max(b.quantifier_rank())
            }
            Formula::Forall(_, f) | Formula::Exists(_, f) => 1 + f.quantifier_rank(),
        }
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        match self {
            Formula::Eq(..) | Formula::Adj(..) => 1,
            Formula::Not(f) | Formula::Forall(_, f) | Formula::Exists(_, f) => 1 + f.size(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                1 + a.size() + b.size()
            }
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free<'a>(&'a self, bound: &mut Vec<&'a str>, out: &mut BTreeSet<String>) {
        let mut note = |v: &str, bound: &Vec<&str>| {
            if !bound.contains(&v) {
                out.insert(v.to_string());
            }
        };
        match self {
            Formula::Eq(a, b) | Formula::Adj(a, b, _) => {
                note(a, bound);
                note(b, bound);
            }
            Formula::Not(f) => f.collect_free(bound, out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Forall(v, f) | Formula::Exists(v, f) => {
                bound.push(v);
                f.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn is_sentence(&self) -> bool {
        self.free_vars().is_empty()
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Forall(..) | Formula::Exists(..) => 0,
            Formula::Iff(..) => 1,
            Formula::Implies(..) => 2,
            Formula::Or(..) => 3,
            Formula::And(..) => 4,
            Formula::Not(..) => 5,
            Formula::Eq(..) | Formula::Adj(..) => 6,
        }
    }

    fn write_prec(&self, f: &mut fmt::Formatter<'_>, ctx: u8) -> fmt::Result {
        // Quantifiers swallow everything to their right, so any operand
        // position gets parentheses.
        let p = self.precedence();
        let paren = if p == 0 { ctx > 0 } else { p < ctx };
        if paren {
            f.write_str("(")?;
        }
        match self {
            Formula::Eq(a, b) => write!(f, "{a} = {b}")?,
            Formula::Adj(a, b, 1) => write!(f, "adj({a}, {b})")?,
            Formula::Adj(a, b, j) => write!(f, "adjk({a}, {b}, {j})")?,
            Formula::Not(x) => {
                f.write_str("!")?;
                x.write_prec(f, 5)?;
            }
            Formula::And(a, b) => binary(f, a, " & ", b, p, p + 1)?,
            Formula::Or(a, b) => binary(f, a, " | ", b, p, p + 1)?,
            Formula::Iff(a, b) => binary(f, a, " <-> ", b, p, p + 1)?,
            Formula::Implies(a, b) => binary(f, a, " -> ", b, p + 1, p)?,
            Formula::Forall(v, x) => {
                write!(f, "forall {v}. ")?;
                x.write_prec(f, 0)?;
            }
            Formula::Exists(v, x) => {
                write!(f, "exists {v}. ")?;
                x.write_prec(f, 0)?;
            }
        }
        if paren {
            f.write_str(")")?;
        }
        Ok(())
    }
}

fn binary(f: &mut fmt::Formatter<'_>, a: &Formula, op: &str, b: &Formula, lctx: u8, rctx: u8) -> fmt::Result {
    a.write_prec(f, lctx)?;
    f.write_str(op)?;
    b.write_prec(f, rctx)
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_prec(f, 0)
    }
}

/// A formula without free variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Sentence(Formula);

impl Sentence {
    pub fn new(f: Formula) -> Result<Self, ParseError> {
        match f.free_vars().into_iter().next() {
            None => Ok(Sentence(f)),
            Some(v) => Err(ParseError::new(0, ParseErrorKind::Unbound(v))),
        }
    }

    pub fn formula(&self) -> &Formula {
        &self.0
    }

    pub fn into_formula(self) -> Formula {
        self.0
    }

    pub fn quantifier_rank(&self) -> usize {
        self.0.quantifier_rank()
    }
}

impl fmt::Display for Sentence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

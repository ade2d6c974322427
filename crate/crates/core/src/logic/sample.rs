use rand::Rng as _;

use super::ast::{Formula, Sentence};
use crate::error::{Error, Result};
use crate::rng::{rng_from_seed, Rng};

/// Random closed sentence with rank at most `max_qr` and at most `max_size` nodes.
///
/// Variables are named `x0, x1, ..` after their binding depth, so sibling
/// quantifiers reuse names and nested ones never shadow.
pub fn sample_sentence(max_qr: usize, max_size: usize, seed: u64) -> Result<Sentence> {
    let mut rng = rng_from_seed(seed);
    sample_sentence_with(&mut rng, max_qr, max_size)
}

pub(crate) fn sample_sentence_with(rng: &mut Rng, max_qr: usize, max_size: usize) -> Result<Sentence> {
    if max_qr == 0 {
        return Err(Error::InvalidParameter("max_qr must be at least 1".into()));
    }
    if max_size < 2 {
        return Err(Error::InvalidParameter("the smallest sentence has 2 nodes".into()));
    }
    let f = grow(rng, max_size, max_qr, 0);
    Ok(Sentence::new(f).expect("sampler only emits bound variables"))
}

fn var(i: usize) -> String {
    format!("x{i}")
}

fn grow(rng: &mut Rng, budget: usize, qr_left: usize, depth: usize) -> Formula {
    // With nothing in scope every leaf must sit under a quantifier.
    let min = if depth == 0 { 2 } else { 1 };
    let atom_w = if depth > 0 { 3 } else { 0 };
    let quant_w = if qr_left > 0 && budget >= 2 { 3 } else { 0 };
    let not_w = if budget > min { 1 } else { 0 };
    let bin_w = if budget > 2 * min { 3 } else { 0 };
    let total = atom_w + quant_w + not_w + bin_w;
    debug_assert!(total > 0, "budget {budget} qr {qr_left} depth {depth}");
    let mut pick = rng.random_range(0..total);
    if pick < atom_w {
        return atom(rng, depth);
    }
    pick -= atom_w;
    if pick < quant_w {
        let v = var(depth);
        let body = grow(rng, budget - 1, qr_left - 1, depth + 1);
        return if rng.random_bool(0.5) { Formula::Forall(v, Box::new(body)) } else { Formula::Exists(v, Box::new(body)) };
    }
    pick -= quant_w;
    if pick < not_w {
        return Formula::not(grow(rng, budget - 1, qr_left, depth));
    }
    let left_budget = rng.random_range(min..=budget - 1 - min);
    let a = grow(rng, left_budget, qr_left, depth);
    let b = grow(rng, budget - 1 - a.size(), qr_left, depth);
    match rng.random_range(0..4) {
        0 => Formula::and(a, b),
        1 => Formula::or(a, b),
        2 => Formula::implies(a, b),
        _ => Formula::iff(a, b),
    }
}

fn atom(rng: &mut Rng, depth: usize) -> Formula {
    let a = var(rng.random_range(0..depth));
    let b = var(rng.random_range(0..depth));
    let roll: f64 = rng.random();
    if roll < 0.30 {
        Formula::Eq(a, b)
    } else if roll < 0.85 {
        Formula::Adj(a, b, 1)
    } else {
        Formula::Adj(a, b, 2)
    }
}

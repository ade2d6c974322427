use std::collections::BTreeMap;

use rand::Rng as _;
use rayon::prelude::*;
use serde::Serialize;

use super::canon::{canonical_ball, CanonicalCode};
use crate::error::{Error, Result};
use crate::multigraph::{enumerate_cycles, Multigraph, Vertex};
use crate::rng::rng_from_seed;

/// Classification of sampled vertices by whether their `r`-ball avoids every
/// short cycle.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Census {
    /// Ball codes of the vertices whose ball avoids all short cycles.
    pub acyclic: BTreeMap<CanonicalCode, usize>,
    /// Sampled vertices whose ball meets a cycle of length at most `2r + 1`.
    pub near_cycle: usize,
    pub sampled: usize,
}

impl Census {
    pub fn acyclic_total(&self) -> usize {
        self.acyclic.values().sum()
    }
}

/// Vertices within distance `r` of a cycle of length at most `2r + 1`.
///
/// Any cycle inside an `r`-ball has at most `2r + 1` vertices, so the balls of
/// the remaining vertices are trees.
pub fn near_short_cycles(g: &Multigraph, r: usize) -> Result<Vec<bool>> {
    let mut near = vec![false; g.n() + 1];
    if g.is_forest() {
        return Ok(near);
    }
    let mut on_cycle: Vec<Vertex> = enumerate_cycles(g, 2 * r.max(1) + 1)?.into_iter().flat_map(|c| c.vertices).collect();
    on_cycle.sort_unstable();
    on_cycle.dedup();
    for v in g.distances_from(&on_cycle, r).into_keys() {
        near[v] = true;
    }
    Ok(near)
}

/// Census over `sample_size` uniform vertices drawn with replacement, or over
/// every vertex when `sample_size` is zero.
pub fn acyclic_class_census(g: &Multigraph, r: usize, sample_size: usize, seed: u64) -> Result<Census> {
    if r == 0 {
        return Err(Error::InvalidParameter("radius must be at least 1".into()));
    }
    let near = near_short_cycles(g, r)?;
    let picks: Vec<Vertex> = if sample_size == 0 {
        g.vertices().collect()
    } else {
        let mut rng = rng_from_seed(seed);
        (0..sample_size).map(|_| rng.random_range(1..=g.n())).collect()
    };
    let codes: Vec<Option<CanonicalCode>> = picks
        .par_iter()
        .map(|&v| (!near[v]).then(|| canonical_ball(&g.neighborhood(&[v], r))))
        .collect();
    let mut census = Census { sampled: picks.len(), ..Census::default() };
    for c in codes {
        match c {
            Some(code) => *census.acyclic.entry(code).or_default() += 1,
            None => census.near_cycle += 1,
        }
    }
    Ok(census)
}

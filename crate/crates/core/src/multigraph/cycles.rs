//! Bounded-length cycle enumeration.
//!
//! Each simple cycle is reported once: the walk starts at its minimal vertex and
//! only visits larger vertices, and of the two traversal directions the one
//! whose second vertex is smaller than its last is kept.

use serde::Serialize;

use super::{Multigraph, Vertex};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Cycle {
    /// Cyclically ordered, distinct, starting at the minimal vertex.
    pub vertices: Vec<Vertex>,
    /// Edge multiplicity for a length-2 cycle (a doubled edge); 1 otherwise.
    pub multiplicity: u32,
}

impl Cycle {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

pub fn enumerate_cycles(g: &Multigraph, max_len: usize) -> Result<Vec<Cycle>> {
    if max_len < 2 {
        return Err(Error::InvalidParameter(format!("max_len must be >= 2, got {max_len}")));
    }
    let mut out: Vec<Cycle> = g
        .edges()
        .filter(|&(_, _, c)| c >= 2)
        .map(|(u, v, c)| Cycle { vertices: vec![u, v], multiplicity: c })
        .collect();
    if max_len >= 3 {
        let mut on_path = vec![false; g.n() + 1];
        let mut path = Vec::with_capacity(max_len);
        for s in g.vertices() {
            path.push(s);
            on_path[s] = true;
            extend(g, s, max_len, &mut path, &mut on_path, &mut |p| {
                out.push(Cycle { vertices: p.to_vec(), multiplicity: 1 })
            });
            on_path[s] = false;
            path.pop();
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.vertices.cmp(&b.vertices)));
    Ok(out)
}

fn extend(
    g: &Multigraph,
    start: Vertex,
    max_len: usize,
    path: &mut Vec<Vertex>,
    on_path: &mut [bool],
    emit: &mut impl FnMut(&[Vertex]),
) {
    let u = *path.last().expect("non-empty path");
    for &(w, _) in g.neighbors(u) {
        if w == start {
            if path.len() >= 3 && path[1] < path[path.len() - 1] {
                emit(path);
            }
        } else if w > start && !on_path[w] && path.len() < max_len {
            on_path[w] = true;
            path.push(w);
            extend(g, start, max_len, path, on_path, emit);
            path.pop();
            on_path[w] = false;
        }
    }
}

/// Number of cycles of exactly `len` vertices whose youngest (maximal) vertex
/// is `w`, i.e. the cycles closed when `w` joined the graph.
pub fn count_cycles_closed_by(g: &Multigraph, w: Vertex, len: usize) -> usize {
    if len == 2 {
        return g.neighbors(w).iter().filter(|&&(u, c)| u < w && c >= 2).count();
    }
    if len < 3 {
        return 0;
    }
    // Walk from w through strictly older vertices; orientation fixed by
    // requiring path[1] < path[last]. The closing vertex is looked up among
    // the older neighbours of w, which keeps hubs on the path cheap.
    fn walk(g: &Multigraph, w: Vertex, len: usize, path: &mut Vec<Vertex>, count: &mut usize) {
        let u = *path.last().unwrap();
        if path.len() + 1 == len {
            for &(x, _) in g.neighbors(w) {
                if x >= w {
                    break;
                }
                if path[1] < x && !path.contains(&x) && g.multiplicity(u, x) > 0 {
                    *count += 1;
                }
            }
            return;
        }
        for &(x, _) in g.neighbors(u) {
            if x < w && !path.contains(&x) {
                path.push(x);
                walk(g, w, len, path, count);
                path.pop();
            }
        }
    }
    let mut count = 0;
    let mut path = vec![w];
    walk(g, w, len, &mut path, &mut count);
    count
}

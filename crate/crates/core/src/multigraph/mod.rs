//! Growth-ordered undirected multigraphs.
//!
//! Vertices are the creation indices `1..=n` and are never reused. Edges are
//! unordered pairs with a multiplicity; self-loops cannot be represented.

mod cycles;
mod io;
mod tree;

pub use cycles::{count_cycles_closed_by, enumerate_cycles, Cycle};
pub use tree::RootedTree;

use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// 1-based creation index.
pub type Vertex = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Classical,
    Sequential,
    Urn,
    Custom,
}

impl ModelKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ModelKind::Classical => "classical",
            ModelKind::Sequential => "sequential",
            ModelKind::Urn => "urn",
            ModelKind::Custom => "custom",
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "classical" => Ok(ModelKind::Classical),
            "sequential" => Ok(ModelKind::Sequential),
            "urn" => Ok(ModelKind::Urn),
            "custom" => Ok(ModelKind::Custom),
            other => Err(Error::InvalidParameter(format!("unknown model kind `{other}`"))),
        }
    }
}

/// Provenance of a graph: which rule produced it and with what parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphMeta {
    pub kind: ModelKind,
    pub alpha: f64,
    pub seed: u64,
}

impl GraphMeta {
    pub fn custom() -> Self {
        GraphMeta { kind: ModelKind::Custom, alpha: 0.0, seed: 0 }
    }
}

/// Undirected multigraph on the vertex set `1..=n`.
#[derive(Clone, Debug)]
pub struct Multigraph {
    n: usize,
    m: usize,
    meta: GraphMeta,
    /// `adj[v - 1]` holds `(neighbour, multiplicity)` sorted by neighbour.
    adj: Vec<Vec<(Vertex, u32)>>,
    /// `(creator, target)` endpoint assignments in creation order. The creator
    /// is always the younger endpoint.
    history: Vec<(Vertex, Vertex)>,
}

impl PartialEq for Multigraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.m == other.m && self.meta == other.meta && self.adj == other.adj
    }
}

impl Multigraph {
    /// Build a graph from endpoint assignments `(creator, target)` listed in
    /// creation order. Requires `target < creator`.
    pub fn from_history(n: usize, m: usize, meta: GraphMeta, history: Vec<(Vertex, Vertex)>) -> Result<Self> {
        let mut raw: Vec<Vec<Vertex>> = vec![Vec::new(); n];
        for &(c, t) in &history {
            if c == 0 || c > n {
                return Err(Error::VertexOutOfRange { vertex: c, n });
            }
            if t == 0 || t >= c {
                return Err(Error::InvalidParameter(format!("attachment {c} -> {t} must target an older vertex")));
            }
            raw[c - 1].push(t);
            raw[t - 1].push(c);
        }
        let adj = raw.into_iter().map(compress).collect();
        Ok(Multigraph { n, m, meta, adj, history })
    }

    /// Build a graph from `(u, v, multiplicity)` triples. The creation history
    /// is reconstructed canonically: each vertex attaches to its older
    /// neighbours in increasing order.
    pub fn from_edges<I>(n: usize, m: usize, meta: GraphMeta, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex, u32)>,
    {
        let mut pairs: BTreeMap<(Vertex, Vertex), u32> = BTreeMap::new();
        for (u, v, mult) in edges {
            for w in [u, v] {
                if w == 0 || w > n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::InvalidParameter(format!("self-loop at vertex {u}")));
            }
            if mult == 0 {
                continue;
            }
            *pairs.entry((u.min(v), u.max(v))).or_default() += mult;
        }
        let mut by_creator: Vec<Vec<(Vertex, u32)>> = vec![Vec::new(); n];
        for (&(a, b), &mult) in &pairs {
            by_creator[b - 1].push((a, mult));
        }
        let mut history = Vec::new();
        for (c, older) in by_creator.iter().enumerate() {
            for &(t, mult) in older {
                history.extend(std::iter::repeat_n((c + 1, t), mult as usize));
            }
        }
        Self::from_history(n, m, meta, history)
    }

    /// Convenience constructor for hand-built simple graphs.
    pub fn simple(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        Self::from_edges(n, 1, GraphMeta::custom(), edges.iter().map(|&(u, v)| (u, v, 1)))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn meta(&self) -> &GraphMeta {
        &self.meta
    }

    pub fn history(&self) -> &[(Vertex, Vertex)] {
        &self.history
    }

    pub fn vertices(&self) -> std::ops::RangeInclusive<Vertex> {
        1..=self.n
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v == 0 || v > self.n {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    /// Neighbours of `v` with multiplicities, sorted by neighbour id.
    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &[(Vertex, u32)] {
        &self.adj[v - 1]
    }

    #[inline]
    pub fn multiplicity(&self, u: Vertex, v: Vertex) -> u32 {
        let row = &self.adj[u - 1];
        match row.binary_search_by_key(&v, |&(w, _)| w) {
            Ok(i) => row[i].1,
            Err(_) => 0,
        }
    }

    /// Multiplicity-counted degree in the final graph.
    #[inline]
    pub fn deg(&self, v: Vertex) -> usize {
        self.adj[v - 1].iter().map(|&(_, c)| c as usize).sum()
    }

    /// Degree of `v`, optionally as of the moment just before the `i`-th edge
    /// (1-based) of vertex `w` was assigned.
    pub fn degree(&self, v: Vertex, upto: Option<(Vertex, usize)>) -> Result<usize> {
        self.check_vertex(v)?;
        let Some((w, i)) = upto else {
            return Ok(self.deg(v));
        };
        self.check_vertex(w)?;
        let mut count = 0;
        let mut seen_of_w = 0;
        for &(c, t) in &self.history {
            if c > w {
                break;
            }
            if c == w {
                seen_of_w += 1;
                if seen_of_w >= i {
                    break;
                }
            }
            if c == v || t == v {
                count += 1;
            }
        }
        Ok(count)
    }

    /// Sum of multiplicities over all edges.
    pub fn edge_count(&self) -> usize {
        self.history.len()
    }

    /// Edges `(u, v, multiplicity)` with `u < v`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex, u32)> + '_ {
        self.adj.iter().enumerate().flat_map(|(i, row)| {
            let u = i + 1;
            row.iter().filter(move |&&(v, _)| v > u).map(move |&(v, c)| (u, v, c))
        })
    }

    /// True when the underlying simple graph is acyclic and no edge is doubled.
    pub fn is_forest(&self) -> bool {
        let simple_edges = self.edges().count();
        if self.edges().any(|(_, _, c)| c > 1) {
            return false;
        }
        simple_edges + self.component_count() == self.n
    }

    pub fn component_count(&self) -> usize {
        let mut seen = vec![false; self.n + 1];
        let mut count = 0;
        let mut stack = Vec::new();
        for s in self.vertices() {
            if seen[s] {
                continue;
            }
            count += 1;
            seen[s] = true;
            stack.push(s);
            while let Some(u) = stack.pop() {
                for &(w, _) in self.neighbors(u) {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        count
    }

    /// Apply a vertex relabeling `v -> perm[v - 1]` (a permutation of `1..=n`).
    /// Metadata is kept; the history is rebuilt canonically.
    pub fn relabel(&self, perm: &[Vertex]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::InvalidParameter("permutation length mismatch".into()));
        }
        let edges: Vec<_> = self.edges().map(|(u, v, c)| (perm[u - 1], perm[v - 1], c)).collect();
        Self::from_edges(self.n, self.m, self.meta.clone(), edges)
    }

    /// Breadth-first distances from a set of sources, truncated at `r`.
    /// Multiplicity never shortens a path.
    pub fn distances_from(&self, sources: &[Vertex], r: usize) -> BTreeMap<Vertex, usize> {
        let mut dist = BTreeMap::new();
        let mut queue = VecDeque::new();
        for &s in sources {
            if dist.insert(s, 0).is_none() {
                queue.push_back(s);
            }
        }
        while let Some(u) = queue.pop_front() {
            let d = dist[&u];
            if d == r {
                continue;
            }
            for &(w, _) in self.neighbors(u) {
                if let std::collections::btree_map::Entry::Vacant(e) = dist.entry(w) {
                    e.insert(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// The ball `B_r(v)` as an induced subgraph with distance labels.
    pub fn ball(&self, v: Vertex, r: usize) -> Result<RootedSubgraph> {
        self.check_vertex(v)?;
        Ok(self.neighborhood(&[v], r))
    }

    /// Induced subgraph on all vertices within distance `r` of `sources`.
    pub fn neighborhood(&self, sources: &[Vertex], r: usize) -> RootedSubgraph {
        let dist = self.distances_from(sources, r);
        let vertices: Vec<Vertex> = dist.keys().copied().collect();
        let mut edges = Vec::new();
        for &u in &vertices {
            for &(w, c) in self.neighbors(u) {
                if w > u && dist.contains_key(&w) {
                    edges.push((u, w, c));
                }
            }
        }
        let mut roots = sources.to_vec();
        roots.sort_unstable();
        roots.dedup();
        RootedSubgraph { roots, depth: r, vertices, edges, dist }
    }
}

fn compress(mut raw: Vec<Vertex>) -> Vec<(Vertex, u32)> {
    raw.sort_unstable();
    let mut out: Vec<(Vertex, u32)> = Vec::with_capacity(raw.len());
    for v in raw {
        match out.last_mut() {
            Some((w, c)) if *w == v => *c += 1,
            _ => out.push((v, 1)),
        }
    }
    out
}

/// Induced subgraph on a ball around one or more roots.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootedSubgraph {
    pub roots: Vec<Vertex>,
    pub depth: usize,
    /// Sorted vertex ids.
    pub vertices: Vec<Vertex>,
    /// `(u, v, multiplicity)` with `u < v`.
    pub edges: Vec<(Vertex, Vertex, u32)>,
    pub dist: BTreeMap<Vertex, usize>,
}

impl RootedSubgraph {
    pub fn root(&self) -> Vertex {
        self.roots[0]
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Underlying simple graph is a tree (edge multiplicities allowed).
    pub fn is_multitree(&self) -> bool {
        self.edges.len() + 1 == self.vertices.len()
    }

    /// A tree with no doubled edge.
    pub fn is_simple_tree(&self) -> bool {
        self.is_multitree() && self.edges.iter().all(|&(_, _, c)| c == 1)
    }

    /// Local adjacency with vertices renumbered `0..len` in `self.vertices` order.
    pub fn local_adjacency(&self) -> Vec<Vec<(usize, u32)>> {
        let index: BTreeMap<Vertex, usize> = self.vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for &(u, v, c) in &self.edges {
            let (a, b) = (index[&u], index[&v]);
            adj[a].push((b, c));
            adj[b].push((a, c));
        }
        adj
    }

    /// Orient a single-rooted multitree away from its root.
    pub fn to_rooted_tree(&self) -> Result<RootedTree> {
        if self.roots.len() != 1 || !self.is_multitree() {
            return Err(Error::Cyclic);
        }
        let adj = self.local_adjacency();
        let root = self.vertices.binary_search(&self.root()).expect("root in ball");
        RootedTree::from_adjacency(&adj, root)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> Multigraph {
        Multigraph::simple(3, &[(1, 2), (2, 3)]).unwrap()
    }

    #[test]
    fn parallel_pair_degree() {
        let g = Multigraph::from_history(2, 2, GraphMeta::custom(), vec![(2, 1), (2, 1)]).unwrap();
        assert_eq!(g.degree(1, None).unwrap(), 2);
        assert_eq!(g.multiplicity(1, 2), 2);
    }

    #[test]
    fn isolated_initial_vertex() {
        let g = Multigraph::from_history(1, 1, GraphMeta::custom(), vec![]).unwrap();
        assert_eq!(g.degree(1, None).unwrap(), 0);
        assert!(g.degree(2, None).is_err());
    }

    #[test]
    fn degree_upto_counts_earlier_endpoints() {
        // vertex 3 attaches to 1 then 2; vertex 4 attaches to 1, 1
        let h = vec![(2, 1), (2, 1), (3, 1), (3, 2), (4, 1), (4, 1)];
        let g = Multigraph::from_history(4, 2, GraphMeta::custom(), h).unwrap();
        assert_eq!(g.degree(1, Some((3, 1))).unwrap(), 2);
        assert_eq!(g.degree(1, Some((3, 2))).unwrap(), 3);
        assert_eq!(g.degree(1, Some((4, 2))).unwrap(), 4);
        assert_eq!(g.degree(1, None).unwrap(), 5);
        assert_eq!(g.degree(2, Some((4, 1))).unwrap(), 3);
    }

    #[test]
    fn rejects_self_loops() {
        assert!(Multigraph::simple(2, &[(1, 1)]).is_err());
        assert!(Multigraph::from_history(2, 1, GraphMeta::custom(), vec![(1, 1)]).is_err());
    }

    #[test]
    fn triangle_ball_is_whole_graph() {
        let g = Multigraph::simple(3, &[(1, 2), (2, 3), (1, 3)]).unwrap();
        let b = g.ball(1, 1).unwrap();
        assert_eq!(b.vertices, vec![1, 2, 3]);
        assert_eq!(b.edges.len(), 3);
    }

    #[test]
    fn path_ball_radius_one() {
        let b = path3().ball(1, 1).unwrap();
        assert_eq!(b.vertices, vec![1, 2]);
        assert_eq!(b.edges, vec![(1, 2, 1)]);
        assert_eq!(b.dist[&2], 1);
    }

    #[test]
    fn ball_radius_zero_is_root() {
        let b = path3().ball(2, 0).unwrap();
        assert_eq!(b.vertices, vec![2]);
        assert!(b.edges.is_empty());
    }

    #[test]
    fn forest_detection() {
        assert!(path3().is_forest());
        let tri = Multigraph::simple(3, &[(1, 2), (2, 3), (1, 3)]).unwrap();
        assert!(!tri.is_forest());
        let dbl = Multigraph::from_edges(2, 1, GraphMeta::custom(), [(1, 2, 2)]).unwrap();
        assert!(!dbl.is_forest());
    }
}

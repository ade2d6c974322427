use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;

use super::canon::{canonical_distance_labelled, CanonicalCode};
use crate::error::{Error, Result};
use crate::multigraph::{enumerate_cycles, Cycle, Multigraph, RootedSubgraph, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ComponentKind {
    Isolated,
    Multicycle,
}

/// Cycles of length at most `2r` chained by mutual distance at most `r`.
#[derive(Clone, Debug, Serialize)]
pub struct CycleComponent {
    pub cycles: Vec<Cycle>,
    /// Sorted union of the member cycles' vertices.
    pub vertices: Vec<Vertex>,
    /// `B_r` of the vertex union, labelled by distance to it.
    pub neighborhood: RootedSubgraph,
    pub kind: ComponentKind,
}

impl CycleComponent {
    /// Isomorphism class of the neighbourhood with distances to the cycle set
    /// as vertex labels.
    pub fn code(&self) -> CanonicalCode {
        canonical_distance_labelled(&self.neighborhood)
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a.max(b)] = a.min(b);
        }
    }
}

pub fn cycle_components(g: &Multigraph, r: usize) -> Result<Vec<CycleComponent>> {
    if r == 0 {
        return Err(Error::InvalidParameter("radius must be at least 1".into()));
    }
    let cycles = enumerate_cycles(g, 2 * r)?;
    if cycles.is_empty() {
        return Ok(Vec::new());
    }
    let mut owners: Vec<Vec<usize>> = vec![Vec::new(); g.n() + 1];
    for (i, c) in cycles.iter().enumerate() {
        for &v in &c.vertices {
            owners[v].push(i);
        }
    }
    let mut uf = UnionFind((0..cycles.len()).collect());
    let mut seen = vec![usize::MAX; g.n() + 1];
    let mut queue = VecDeque::new();
    for (i, c) in cycles.iter().enumerate() {
        // Multi-source BFS of radius r from the cycle; any cycle touched joins.
        for &v in &c.vertices {
            seen[v] = i;
            queue.push_back((v, 0usize));
        }
        while let Some((u, d)) = queue.pop_front() {
            for &j in &owners[u] {
                uf.union(i, j);
            }
            if d == r {
                continue;
            }
            for &(w, _) in g.neighbors(u) {
                if seen[w] != i {
                    seen[w] = i;
                    queue.push_back((w, d + 1));
                }
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..cycles.len() {
        let root = uf.find(i);
        groups.entry(root).or_default().push(i);
    }
    let mut out: Vec<CycleComponent> = groups
        .into_values()
        .map(|members| {
            let mut vertices: Vec<Vertex> = members.iter().flat_map(|&i| cycles[i].vertices.iter().copied()).collect();
            vertices.sort_unstable();
            vertices.dedup();
            let neighborhood = g.neighborhood(&vertices, r);
            let kind = if members.len() == 1 { ComponentKind::Isolated } else { ComponentKind::Multicycle };
            CycleComponent { cycles: members.into_iter().map(|i| cycles[i].clone()).collect(), vertices, neighborhood, kind }
        })
        .collect();
    out.sort_by(|a, b| a.vertices.cmp(&b.vertices));
    Ok(out)
}

/// One class of the profile.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProfileEntry {
    pub code: CanonicalCode,
    pub count: usize,
    pub kind: ComponentKind,
    /// Vertex count of the component neighbourhood.
    pub size: usize,
}

/// Counts of cycle components per isomorphism class.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct CycleProfile {
    pub entries: Vec<ProfileEntry>,
}

impl CycleProfile {
    pub fn total(&self) -> usize {
        self.entries.iter().map(|e| e.count).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn count(&self, code: &CanonicalCode) -> usize {
        self.entries.iter().find(|e| &e.code == code).map_or(0, |e| e.count)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

pub fn cycle_profile(g: &Multigraph, r: usize) -> Result<CycleProfile> {
    Ok(profile_of(&cycle_components(g, r)?))
}

pub fn profile_of(components: &[CycleComponent]) -> CycleProfile {
    let mut by_code: BTreeMap<CanonicalCode, ProfileEntry> = BTreeMap::new();
    for c in components {
        let code = c.code();
        by_code
            .entry(code.clone())
            .and_modify(|e| e.count += 1)
            .or_insert(ProfileEntry { code, count: 1, kind: c.kind, size: c.neighborhood.len() });
    }
    CycleProfile { entries: by_code.into_values().collect() }
}

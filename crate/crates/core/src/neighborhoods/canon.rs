//! Canonical codes.
//!
//! Rooted multitrees use AHU strings: a node is `(` followed by its sorted
//! child codes and `)`, each child code prefixed by its edge multiplicity when
//! that exceeds one.
//!
//! Vertex-labelled connected multigraphs are handled by peeling pendant trees
//! into the labels of the vertices they hang from, then canonising the
//! remaining 2-core by colour refinement and individualisation, keeping the
//! lexicographically least adjacency encoding.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::Result;
use crate::multigraph::{RootedSubgraph, RootedTree};

/// Isomorphism-invariant code; equal codes iff isomorphic structures.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode(String);

impl CanonicalCode {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn as_bytes(&self) -> &[u8] {
        self.0.as_bytes()
    }

    pub fn is_tree(&self) -> bool {
        self.0.starts_with('(')
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Serialize for CanonicalCode {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0)
    }
}

fn push_child(out: &mut String, mult: u32, code: &str) {
    if mult > 1 {
        out.push_str(&mult.to_string());
    }
    out.push_str(code);
}

/// AHU code of a rooted tree (children always carry larger ids than parents).
pub fn tree_code(t: &RootedTree) -> CanonicalCode {
    let mut codes: Vec<String> = vec![String::new(); t.len()];
    for v in (0..t.len()).rev() {
        let mut kids: Vec<String> = t.children[v]
            .iter()
            .map(|&(c, mult)| {
                let mut s = String::new();
                push_child(&mut s, mult, &codes[c]);
                s
            })
            .collect();
        kids.sort_unstable();
        let mut s = String::with_capacity(2 + kids.iter().map(String::len).sum::<usize>());
        s.push('(');
        for k in kids {
            s.push_str(&k);
        }
        s.push(')');
        codes[v] = s;
    }
    CanonicalCode(std::mem::take(&mut codes[0]))
}

/// AHU code of a ball that is a multitree; fails on cyclic input.
pub fn canonical_rooted_tree(t: &RootedSubgraph) -> Result<CanonicalCode> {
    Ok(tree_code(&t.to_rooted_tree()?))
}

/// Code of a rooted ball whether or not it is a tree: AHU when acyclic,
/// otherwise the labelled form with distances from the root as labels.
pub fn canonical_ball(t: &RootedSubgraph) -> CanonicalCode {
    if t.roots.len() == 1 && t.is_multitree() {
        return canonical_rooted_tree(t).expect("multitree checked");
    }
    canonical_distance_labelled(t)
}

/// Labelled code of a neighbourhood with each vertex labelled by its
/// distance to the root set.
pub fn canonical_distance_labelled(t: &RootedSubgraph) -> CanonicalCode {
    let labels: Vec<String> = t.vertices.iter().map(|v| t.dist[v].to_string()).collect();
    canonical_labelled_graph(&t.local_adjacency(), &labels)
}

/// Canonical code of a vertex-labelled multigraph given by symmetric
/// adjacency lists `(neighbour, multiplicity)`. Labels must not contain any
/// of `<>[]|,.`.
pub fn canonical_labelled_graph(adj: &[Vec<(usize, u32)>], labels: &[String]) -> CanonicalCode {
    let n = adj.len();
    assert_eq!(labels.len(), n);
    let mut alive = vec![true; n];
    let mut degree: Vec<u32> = adj.iter().map(|row| row.iter().map(|&(_, c)| c).sum()).collect();
    let mut pending: Vec<Vec<String>> = vec![Vec::new(); n];
    let mut finished: Vec<String> = Vec::new();
    let mut remaining = n;

    let close = |v: usize, pending: &mut Vec<Vec<String>>| -> String {
        let mut kids = std::mem::take(&mut pending[v]);
        kids.sort_unstable();
        format!("<{}>[{}]", labels[v], kids.concat())
    };

    // Peel leaves layer by layer so that trees collapse onto their centre.
    loop {
        let layer: Vec<usize> = (0..n).filter(|&v| alive[v] && degree[v] <= 1).collect();
        if layer.is_empty() {
            break;
        }
        let in_layer = {
            let mut mark = vec![false; n];
            for &v in &layer {
                mark[v] = true;
            }
            mark
        };
        let mut codes: Vec<Option<String>> = vec![None; n];
        for &v in &layer {
            codes[v] = Some(close(v, &mut pending));
        }
        for &v in &layer {
            alive[v] = false;
            remaining -= 1;
            let code = codes[v].as_deref().unwrap();
            let parent = adj[v].iter().find(|&&(w, _)| alive[w] || (in_layer[w] && w != v));
            match parent {
                None => finished.push(format!("C{code}")),
                Some(&(p, _)) if in_layer[p] => {
                    // Both ends of an isolated edge; emit the pair once.
                    if v < p {
                        let other = codes[p].as_deref().unwrap();
                        let (a, b) = if code <= other { (code, other) } else { (other, code) };
                        finished.push(format!("E{a}{b}"));
                    }
                }
                Some(&(p, mult)) => {
                    let mut s = String::new();
                    push_child(&mut s, mult, code);
                    pending[p].push(s);
                    degree[p] -= mult;
                }
            }
        }
        if remaining == 0 {
            break;
        }
    }
    finished.sort_unstable();

    let core: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
    let mut out = String::from("G");
    for f in &finished {
        out.push_str(f);
        out.push(',');
    }
    out.push('|');
    if !core.is_empty() {
        let full: Vec<String> = core
            .iter()
            .map(|&v| {
                let mut kids = std::mem::take(&mut pending[v]);
                kids.sort_unstable();
                format!("<{}>[{}]", labels[v], kids.concat())
            })
            .collect();
        let (table, encoding) = canonical_core(adj, &core, &full);
        out.push_str(&table.join(","));
        out.push('|');
        let nums: Vec<String> = encoding.iter().map(u32::to_string).collect();
        out.push_str(&nums.join("."));
    }
    CanonicalCode(out)
}

/// Returns the sorted distinct labels and the minimal encoding
/// `[label index per position..., (i, j, mult) per edge...]`.
fn canonical_core(adj: &[Vec<(usize, u32)>], core: &[usize], labels: &[String]) -> (Vec<String>, Vec<u32>) {
    let k = core.len();
    let index: BTreeMap<usize, usize> = core.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let local: Vec<Vec<(usize, u32)>> = core
        .iter()
        .map(|&v| {
            let mut row: Vec<(usize, u32)> =
                adj[v].iter().filter_map(|&(w, c)| index.get(&w).map(|&j| (j, c))).collect();
            row.sort_unstable();
            row
        })
        .collect();
    let mut table: Vec<String> = labels.to_vec();
    table.sort_unstable();
    table.dedup();
    let initial: Vec<u32> = labels.iter().map(|l| table.binary_search(l).unwrap() as u32).collect();
    let colours = refine(&local, rank(&initial));
    let mut best: Option<Vec<u32>> = None;
    search(&local, &initial, colours, &mut best);
    debug_assert!(k == 0 || best.is_some());
    (table, best.unwrap_or_default())
}

/// Dense re-ranking of arbitrary ordered keys.
fn rank<K: Ord + Clone>(keys: &[K]) -> Vec<u32> {
    let mut sorted: Vec<K> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter().map(|k| sorted.binary_search(k).unwrap() as u32).collect()
}

fn cells(colours: &[u32]) -> usize {
    colours.iter().copied().max().map_or(0, |c| c as usize + 1)
}

fn refine(adj: &[Vec<(usize, u32)>], mut colours: Vec<u32>) -> Vec<u32> {
    loop {
        let before = cells(&colours);
        let sigs: Vec<(u32, Vec<(u32, u32)>)> = adj
            .iter()
            .enumerate()
            .map(|(v, row)| {
                let mut s: Vec<(u32, u32)> = row.iter().map(|&(w, c)| (colours[w], c)).collect();
                s.sort_unstable();
                (colours[v], s)
            })
            .collect();
        colours = rank(&sigs);
        if cells(&colours) == before {
            return colours;
        }
    }
}

fn search(adj: &[Vec<(usize, u32)>], initial: &[u32], colours: Vec<u32>, best: &mut Option<Vec<u32>>) {
    let k = colours.len();
    if cells(&colours) == k {
        let enc = encode(adj, initial, &colours);
        if best.as_ref().is_none_or(|b| enc < *b) {
            *best = Some(enc);
        }
        return;
    }
    let mut size = vec![0usize; k];
    for &c in &colours {
        size[c as usize] += 1;
    }
    let target = (0..k).find(|&c| size[c] > 1).unwrap() as u32;
    let mut tried: Vec<usize> = Vec::new();
    for v in 0..k {
        // Swapping twins is an automorphism fixing the current colouring.
        if colours[v] != target || tried.iter().any(|&u| twins(adj, initial, u, v)) {
            continue;
        }
        tried.push(v);
        let split: Vec<u32> = colours.iter().enumerate().map(|(w, &c)| 2 * c + u32::from(w != v)).collect();
        search(adj, initial, refine(adj, rank(&split)), best);
    }
}

fn twins(adj: &[Vec<(usize, u32)>], initial: &[u32], u: usize, v: usize) -> bool {
    if initial[u] != initial[v] {
        return false;
    }
    let strip = |row: &[(usize, u32)], other: usize| -> Vec<(usize, u32)> {
        row.iter().copied().filter(|&(w, _)| w != other).collect()
    };
    let mult = |row: &[(usize, u32)], w: usize| row.iter().find(|&&(x, _)| x == w).map_or(0, |&(_, c)| c);
    mult(&adj[u], v) == mult(&adj[v], u) && strip(&adj[u], v) == strip(&adj[v], u)
}

fn encode(adj: &[Vec<(usize, u32)>], initial: &[u32], colours: &[u32]) -> Vec<u32> {
    let k = colours.len();
    let mut at = vec![0usize; k];
    for (v, &c) in colours.iter().enumerate() {
        at[c as usize] = v;
    }
    let mut enc: Vec<u32> = at.iter().map(|&v| initial[v]).collect();
    let mut edges: Vec<(u32, u32, u32)> = Vec::new();
    for (v, row) in adj.iter().enumerate() {
        for &(w, c) in row {
            let (a, b) = (colours[v], colours[w]);
            if a < b {
                edges.push((a, b, c));
            }
        }
    }
    edges.sort_unstable();
    for (a, b, c) in edges {
        enc.extend([a, b, c]);
    }
    enc
}

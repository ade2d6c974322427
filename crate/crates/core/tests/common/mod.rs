//! Test-side oracles, written independently of the library internals.
#![allow(dead_code)]

use std::collections::BTreeMap;

use palab::multigraph::GraphMeta;
use palab::rng::Rng;
use palab::{Multigraph, Vertex};
use rand::Rng as _;

pub type EdgeList = Vec<(Vertex, Vertex, u32)>;

/// Literal uniform-mixing weight of edge `i` of incoming vertex `w`.
fn alpha_literal(alpha: f64, m: usize, w: usize, i: usize) -> Option<f64> {
    let (m, w, i) = (m as f64, w as f64, i as f64);
    let num = alpha * 2.0 * m * (w - 1.0);
    let den = 2.0 * m * (w - 2.0) + 2.0 * m * alpha + (1.0 - alpha) * (i - 1.0);
    if den == 0.0 {
        None
    } else {
        Some((num / den).clamp(0.0, 1.0))
    }
}

fn edge_list(history: &[(Vertex, Vertex)]) -> EdgeList {
    let mut counts: BTreeMap<(Vertex, Vertex), u32> = BTreeMap::new();
    for &(c, t) in history {
        *counts.entry((t.min(c), t.max(c))).or_default() += 1;
    }
    counts.into_iter().map(|((u, v), c)| (u, v, c)).collect()
}

/// Exact law of the sequential model over edge lists, by exhaustive
/// enumeration of every attachment history.
pub fn exact_sequential_law(n: usize, m: usize, alpha: f64) -> BTreeMap<EdgeList, f64> {
    exact_law(n, m, alpha, true)
}

/// Same for the classical rule (degrees frozen within a round, weight `α`).
pub fn exact_classical_law(n: usize, m: usize, alpha: f64) -> BTreeMap<EdgeList, f64> {
    exact_law(n, m, alpha, false)
}

fn exact_law(n: usize, m: usize, alpha: f64, sequential: bool) -> BTreeMap<EdgeList, f64> {
    let mut out = BTreeMap::new();
    let mut deg = vec![0usize; n + 1];
    grow(n, m, alpha, sequential, 2, 1.0, &mut deg, &mut Vec::new(), &mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn grow(
    n: usize,
    m: usize,
    alpha: f64,
    sequential: bool,
    w: usize,
    p: f64,
    deg: &mut Vec<usize>,
    history: &mut Vec<(Vertex, Vertex)>,
    out: &mut BTreeMap<EdgeList, f64>,
) {
    if w > n {
        *out.entry(edge_list(history)).or_insert(0.0) += p;
        return;
    }
    let mut rounds = Vec::new();
    round(m, alpha, sequential, w, 1, 1.0, deg, &mut Vec::new(), &mut rounds);
    for (targets, q) in rounds {
        for &t in &targets {
            deg[t] += 1;
            history.push((w, t));
        }
        deg[w] += m;
        grow(n, m, alpha, sequential, w + 1, p * q, deg, history, out);
        deg[w] -= m;
        for &t in &targets {
            deg[t] -= 1;
            history.pop();
        }
    }
}

/// All target sequences of one round of vertex `w`, with probabilities.
#[allow(clippy::too_many_arguments)]
fn round(
    m: usize,
    alpha: f64,
    sequential: bool,
    w: usize,
    i: usize,
    p: f64,
    deg: &[usize],
    chosen: &mut Vec<usize>,
    acc: &mut Vec<(Vec<usize>, f64)>,
) {
    if i > m {
        acc.push((chosen.clone(), p));
        return;
    }
    let old = w - 1;
    let weight: Vec<usize> = (0..=old)
        .map(|k| deg[k] + if sequential { chosen.iter().filter(|&&t| t == k).count() } else { 0 })
        .collect();
    let pool: usize = weight[1..].iter().sum();
    let a = if sequential { alpha_literal(alpha, m, w, i) } else { Some(alpha) };
    for k in 1..=old {
        let q = match a {
            _ if old == 1 => 1.0,
            None => panic!("undefined attachment law at w={w}, i={i}"),
            Some(a) if pool == 0 => {
                assert_eq!(a, 1.0, "empty degree pool needs a uniform pick");
                1.0 / old as f64
            }
            Some(a) => a / old as f64 + (1.0 - a) * weight[k] as f64 / pool as f64,
        };
        if q == 0.0 {
            continue;
        }
        chosen.push(k);
        round(m, alpha, sequential, w, i + 1, p * q, deg, chosen, acc);
        chosen.pop();
    }
}

pub fn edges_of(g: &Multigraph) -> EdgeList {
    g.edges().collect()
}

pub fn tv<K: Ord>(a: &BTreeMap<K, f64>, b: &BTreeMap<K, f64>) -> f64 {
    let mut keys: Vec<&K> = a.keys().chain(b.keys()).collect();
    keys.sort();
    keys.dedup();
    0.5 * keys.iter().map(|k| (a.get(*k).unwrap_or(&0.0) - b.get(*k).unwrap_or(&0.0)).abs()).sum::<f64>()
}

pub fn normalise<K: Ord + Clone>(counts: &BTreeMap<K, usize>) -> BTreeMap<K, f64> {
    let total: usize = counts.values().sum();
    counts.iter().map(|(k, &c)| (k.clone(), c as f64 / total as f64)).collect()
}

/// All permutations of `0..n`.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

pub fn dense(g: &Multigraph) -> Vec<Vec<u32>> {
    let n = g.n();
    (1..=n).map(|u| (1..=n).map(|v| g.multiplicity(u, v)).collect()).collect()
}

/// Isomorphism by trying every bijection.
pub fn brute_isomorphic(a: &Multigraph, b: &Multigraph) -> bool {
    if a.n() != b.n() {
        return false;
    }
    let (da, db) = (dense(a), dense(b));
    permutations(a.n()).iter().any(|p| (0..a.n()).all(|u| (0..a.n()).all(|v| da[u][v] == db[p[u]][p[v]])))
}

/// Every labelled simple graph on exactly `n` vertices.
pub fn all_simple_graphs(n: usize) -> Vec<Multigraph> {
    let pairs: Vec<(Vertex, Vertex)> = (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v))).collect();
    (0u32..1 << pairs.len())
        .map(|mask| {
            let edges: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
            Multigraph::simple(n, &edges).unwrap()
        })
        .collect()
}

/// Random multigraph on `1..=max_n` vertices with multiplicities in `0..=max_mult`.
pub fn random_multigraph(rng: &mut Rng, max_n: usize, max_mult: u32) -> Multigraph {
    let n = rng.random_range(1..=max_n);
    let mut edges = Vec::new();
    for u in 1..=n {
        for v in u + 1..=n {
            let c = rng.random_range(0..=max_mult);
            if c > 0 {
                edges.push((u, v, c));
            }
        }
    }
    Multigraph::from_edges(n, 1, GraphMeta::custom(), edges).unwrap()
}

pub fn random_perm(rng: &mut Rng, n: usize) -> Vec<Vertex> {
    let mut p: Vec<Vertex> = (1..=n).collect();
    for i in (1..n).rev() {
        let j = rng.random_range(0..=i);
        p.swap(i, j);
    }
    p
}

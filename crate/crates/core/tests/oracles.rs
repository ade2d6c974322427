mod common;

use std::collections::BTreeMap;

use common::*;
use palab::experiments::{degree_profile, ExperimentConfig};
use palab::efgame::{equivalent_k, spoiler_witness, verify_witness};
use palab::generators::{generate, generate_sequential, AttachmentRule, ModelConfig};
use palab::logic::{evaluate, parse, Sentence};
use palab::multigraph::{count_cycles_closed_by, enumerate_cycles, RootedTree};
use palab::neighborhoods::{canonical_ball, cycle_profile, tree_code};
use palab::rng::stream;
use palab::Multigraph;
use proptest::prelude::*;

fn k4() -> Multigraph {
    Multigraph::simple(4, &[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]).unwrap()
}

#[test]
fn k4_cycle_census() {
    let cycles = enumerate_cycles(&k4(), 4).unwrap();
    assert_eq!(cycles.iter().filter(|c| c.len() == 3).count(), 4);
    assert_eq!(cycles.iter().filter(|c| c.len() == 4).count(), 3);
    assert_eq!(cycles.len(), 7);
}

fn trace_cube_over_six(g: &Multigraph) -> usize {
    let n = g.n();
    let a: Vec<Vec<u64>> = (1..=n).map(|u| (1..=n).map(|v| u64::from(g.multiplicity(u, v) > 0)).collect()).collect();
    let mut trace = 0;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                trace += a[i][j] * a[j][k] * a[k][i];
            }
        }
    }
    (trace / 6) as usize
}

#[test]
fn triangles_match_trace_of_cube() {
    let mut rng = stream(11, &[]);
    for _ in 0..60 {
        let g = random_multigraph(&mut rng, 9, 1);
        let tri = enumerate_cycles(&g, 3).unwrap().iter().filter(|c| c.len() == 3).count();
        assert_eq!(tri, trace_cube_over_six(&g));
    }
}

#[test]
fn closures_partition_the_cycles() {
    for seed in 0..8 {
        let g = generate(&ModelConfig::new(AttachmentRule::Sequential, 60, 2, 0.2, seed)).unwrap();
        let cycles = enumerate_cycles(&g, 5).unwrap();
        for len in 2..=5 {
            let closed: usize = g.vertices().map(|w| count_cycles_closed_by(&g, w, len)).sum();
            assert_eq!(closed, cycles.iter().filter(|c| c.len() == len).count(), "len {len}");
        }
    }
}

#[test]
fn enumerator_is_a_law_and_matches_affine_form() {
    for (m, alpha) in [(1, 0.0), (1, 0.5), (2, 0.0), (2, 0.3), (2, 1.0)] {
        let law = exact_sequential_law(5, m, alpha);
        let total: f64 = law.values().sum();
        assert!((total - 1.0).abs() < 1e-12, "m={m} alpha={alpha}: {total}");
    }
    // m = 1: attachment proportional to degree + 2u.
    let u = 1.0;
    let law = exact_sequential_law(3, 1, 0.5);
    let p31 = law.get(&vec![(1, 2, 1), (1, 3, 1)]).copied().unwrap();
    assert!((p31 - (1.0 + 2.0 * u) / (2.0 + 4.0 * u)).abs() < 1e-12);
}

#[test]
fn first_edge_law_n4_m2() {
    // E[deg_3(k)] / 8 over the exact law of G_3, against Monte Carlo.
    let g3 = exact_sequential_law(3, 2, 0.0);
    let mut expected = BTreeMap::new();
    for (edges, p) in &g3 {
        for k in 1..=3usize {
            let d: u32 = edges.iter().filter(|e| e.0 == k || e.1 == k).map(|e| e.2).sum();
            *expected.entry(k).or_insert(0.0) += p * f64::from(d) / 8.0;
        }
    }
    assert!((expected.values().sum::<f64>() - 1.0).abs() < 1e-12);
    let reps = 100_000;
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for seed in 0..reps {
        let g = generate_sequential(&ModelConfig::new(AttachmentRule::Sequential, 4, 2, 0.0, seed)).unwrap();
        let first = g.history().iter().find(|&&(c, _)| c == 4).unwrap().1;
        *counts.entry(first).or_default() += 1;
    }
    for (k, p) in expected {
        let emp = counts.get(&k).copied().unwrap_or(0) as f64 / reps as f64;
        let se = (p * (1.0 - p) / reps as f64).sqrt();
        assert!((emp - p).abs() < 4.0 * se, "k={k}: {emp} vs {p}");
    }
}

/// Exact first two moments of `D_n(k)` for `m = 1`, `α = 0`, where vertex
/// `t + 1` joins `k` with probability `D_t(k) / 2(t − 1)`.
fn exact_degree_moments(n: usize, k: usize) -> (f64, f64) {
    let (mut e1, mut e2) = (1.0, 1.0);
    for t in k.max(2)..n {
        let total = 2.0 * (t - 1) as f64;
        e2 = e2 * (1.0 + 2.0 / total) + e1 / total;
        e1 *= 1.0 + 1.0 / total;
    }
    (e1, e2 - e1 * e1)
}

#[test]
fn degree_moments_match_exact_recursion() {
    let mut cfg = ExperimentConfig { n_grid: vec![2_000], replicas: 2_000, seed: 4, ..ExperimentConfig::default() };
    cfg.model.m = 1;
    let t = degree_profile(&cfg, &[5, 50]).unwrap();
    for k in [5usize, 50] {
        let (mean, var) = exact_degree_moments(2_000, k);
        let got = t.get(2_000, &format!("mean_D{k}")).unwrap();
        assert!((got.estimate - mean).abs() < 4.0 * got.stderr, "k={k}: mean {} vs {mean}", got.estimate);
        let got = t.get(2_000, &format!("var_D{k}")).unwrap();
        assert!((got.estimate - var).abs() < 4.0 * got.stderr, "k={k}: var {} vs {var}", got.estimate);
    }
}

/// Every rooted tree on `n` vertices as a parent array (`parent[i] < i`).
fn parent_arrays(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for i in 1..n {
        out = out.into_iter().flat_map(|p: Vec<usize>| (0..i).map(move |q| [p.clone(), vec![q]].concat())).collect();
    }
    out
}

fn rooted_isomorphic(a: &[usize], b: &[usize]) -> bool {
    let n = a.len() + 1;
    if b.len() + 1 != n {
        return false;
    }
    let edges = |p: &[usize]| -> Vec<(usize, usize)> { p.iter().enumerate().map(|(i, &q)| (q, i + 1)).collect() };
    let (ea, eb) = (edges(a), edges(b));
    permutations(n).iter().filter(|perm| perm[0] == 0).any(|perm| {
        ea.iter().all(|&(u, v)| eb.contains(&(perm[u], perm[v])))
    })
}

#[test]
fn tree_codes_partition_like_brute_force() {
    let trees: Vec<Vec<usize>> = (1..=6).flat_map(parent_arrays).collect();
    assert_eq!(trees.len(), 1 + 1 + 2 + 6 + 24 + 120);
    let codes: Vec<String> = trees
        .iter()
        .map(|p| {
            let mut t = RootedTree::singleton();
            for &q in p {
                t.add_child(q, 1);
            }
            let code = tree_code(&t);
            let g = Multigraph::simple(p.len() + 1, &p.iter().enumerate().map(|(i, &q)| (q + 1, i + 2)).collect::<Vec<_>>())
                .unwrap();
            assert_eq!(canonical_ball(&g.ball(1, 6).unwrap()), code);
            code.as_str().to_string()
        })
        .collect();
    for i in 0..trees.len() {
        for j in i..trees.len() {
            assert_eq!(codes[i] == codes[j], rooted_isomorphic(&trees[i], &trees[j]), "{:?} {:?}", trees[i], trees[j]);
        }
    }
}

#[test]
fn deep_equivalence_is_isomorphism() {
    let mut rng = stream(5, &[]);
    for _ in 0..120 {
        let a = random_multigraph(&mut rng, 4, 2);
        let b = if rng_bool(&mut rng) { a.relabel(&random_perm(&mut rng, a.n())).unwrap() } else { random_multigraph(&mut rng, 4, 2) };
        let k = a.n().max(b.n()) + 1;
        assert_eq!(equivalent_k(&a, &b, k), brute_isomorphic(&a, &b));
    }
}

fn rng_bool(rng: &mut palab::rng::Rng) -> bool {
    use rand::Rng as _;
    rng.random_bool(0.5)
}

#[test]
fn one_round_only_sees_nonemptiness() {
    for a in (1..=3).flat_map(all_simple_graphs) {
        for b in (1..=3).flat_map(all_simple_graphs) {
            assert!(equivalent_k(&a, &b, 1));
        }
    }
}

#[test]
fn cycle_vs_two_triangles() {
    let c6 = Multigraph::simple(6, &[(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (1, 6)]).unwrap();
    let two = Multigraph::simple(6, &[(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6)]).unwrap();
    assert!(equivalent_k(&c6, &two, 2));
    assert!(!equivalent_k(&c6, &two, 3));
    let w = spoiler_witness(&c6, &two, 3).unwrap();
    assert!(verify_witness(&c6, &two, 3, &w));
    assert!(!verify_witness(&c6, &two, 2, &w));
}

#[test]
fn profile_is_relabeling_invariant() {
    let mut rng = stream(17, &[]);
    for seed in 0..6 {
        let g = generate(&ModelConfig::new(AttachmentRule::Sequential, 80, 2, 0.0, seed)).unwrap();
        let h = g.relabel(&random_perm(&mut rng, g.n())).unwrap();
        assert_eq!(cycle_profile(&g, 2).unwrap(), cycle_profile(&h, 2).unwrap());
    }
}

#[test]
fn quantifier_free_checks_agree_with_direct_inspection() {
    // Existence of a doubled edge and of a triangle, read off the edge list.
    for seed in 0..30 {
        let g = generate(&ModelConfig::new(AttachmentRule::Classical, 12, 2, 0.5, seed)).unwrap();
        let doubled = g.edges().any(|(_, _, c)| c >= 2);
        let s: Sentence = parse("exists x. exists y. adj2(x,y)").unwrap();
        assert_eq!(evaluate(&g, &s), doubled);
        let tri = trace_cube_over_six(&g) > 0;
        let t = parse("exists x. exists y. exists z. (adj(x,y) & adj(y,z) & adj(x,z))").unwrap();
        assert_eq!(evaluate(&g, &t), tri);
    }
}

proptest! {
    #[test]
    fn text_round_trip(n in 2usize..40, m in 1usize..4, alpha in 0.0f64..=1.0, seed in any::<u64>()) {
        let g = generate(&ModelConfig::new(AttachmentRule::Sequential, n, m, alpha, seed)).unwrap();
        let back = Multigraph::from_text(&g.to_text()).unwrap();
        prop_assert_eq!(back.to_text(), g.to_text());
        prop_assert_eq!(edges_of(&back), edges_of(&g));
    }

    #[test]
    fn sentence_print_parse_round_trip(seed in any::<u64>(), qr in 1usize..4) {
        let s = palab::logic::sample_sentence(qr, 12, seed).unwrap();
        let back = parse(&s.to_string()).unwrap();
        prop_assert_eq!(back.to_string(), s.to_string());
    }
}

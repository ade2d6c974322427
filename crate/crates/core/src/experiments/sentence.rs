use std::collections::BTreeMap;

use rand::Rng as _;

use super::{par_collect, replica_graph, replica_seed, timed, EstimateTable, ExperimentConfig, PICK_STREAM};
use crate::error::{Error, Result};
use crate::logic::{estimate_cost, evaluate, Sentence};
use crate::multigraph::{GraphMeta, Multigraph, Vertex};
use crate::rng::rng_from_seed;
use crate::stats::proportion;

/// Largest estimated evaluator cost accepted per graph.
pub const DEFAULT_COST_BUDGET: f64 = 1e9;

/// Union of `samples` uniformly rooted `r`-balls as a standalone graph.
fn sampled_balls(g: &Multigraph, r: usize, samples: usize, seed: u64) -> Result<Multigraph> {
    let mut rng = rng_from_seed(seed);
    let mut roots: Vec<Vertex> = (0..samples).map(|_| rng.random_range(1..=g.n())).collect();
    roots.sort_unstable();
    roots.dedup();
    let ball = g.neighborhood(&roots, r);
    let index: BTreeMap<Vertex, Vertex> = ball.vertices.iter().enumerate().map(|(i, &v)| (v, i + 1)).collect();
    Multigraph::from_edges(
        ball.len(),
        g.m(),
        GraphMeta::custom(),
        ball.edges.iter().map(|&(u, v, c)| (index[&u], index[&v], c)),
    )
}

/// Fraction of replicas whose graph satisfies `sentence`, per grid point.
pub fn estimate_sentence_probability(cfg: &ExperimentConfig, sentence: &Sentence) -> Result<EstimateTable> {
    cfg.validate()?;
    timed(|| {
        let n_max = *cfg.n_grid.last().expect("validated");
        let domain = if cfg.locality {
            let ball = (2 * cfg.model.m).saturating_pow(cfg.radius as u32).saturating_add(1);
            cfg.samples.saturating_mul(ball).min(n_max)
        } else {
            n_max
        };
        let cost = estimate_cost(sentence.formula(), domain, 2.0 * cfg.model.m as f64);
        if cost > DEFAULT_COST_BUDGET {
            return Err(Error::Infeasible { cost, budget: DEFAULT_COST_BUDGET });
        }
        let mut table = EstimateTable::new("sentence", cfg);
        table.metadata.approximation = cfg.locality;
        table.metadata.labels.insert("sentence".into(), sentence.to_string());
        for &n in &cfg.n_grid {
            let hits = par_collect(cfg, cfg.replicas, |rep| {
                let g = replica_graph(cfg, n, rep)?;
                if cfg.locality {
                    let seed = replica_seed(cfg, PICK_STREAM, n, rep);
                    Ok(evaluate(&sampled_balls(&g, cfg.radius, cfg.samples, seed)?, sentence))
                } else {
                    Ok(evaluate(&g, sentence))
                }
            })?;
            let (p, se) = proportion(hits.iter().filter(|&&h| h).count(), hits.len());
            table.push(n, "probability", p, se, hits.len());
        }
        Ok(table)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::AttachmentRule;
    use crate::logic::parse;

    fn cfg(m: usize, grid: Vec<usize>) -> ExperimentConfig {
        let mut c = ExperimentConfig { n_grid: grid, replicas: 40, ..ExperimentConfig::default() };
        c.model.m = m;
        c
    }

    #[test]
    fn forced_double_edge_at_two() {
        for alpha in [0.0, 0.5, 1.0] {
            let mut c = cfg(2, vec![2]);
            c.model.alpha = alpha;
            let t = estimate_sentence_probability(&c, &parse("exists x. exists y. adj2(x,y)").unwrap()).unwrap();
            assert_eq!(t.rows[0].estimate, 1.0);
            assert_eq!(t.rows[0].stderr, 0.0);
        }
    }

    #[test]
    fn loopless_and_triangle_free() {
        let loopless = parse("forall x. !adj(x,x)").unwrap();
        let t = estimate_sentence_probability(&cfg(2, vec![5, 30]), &loopless).unwrap();
        assert!(t.rows.iter().all(|r| r.estimate == 1.0));
        let triangle = parse("exists x. exists y. exists z. adj(x,y) & adj(y,z) & adj(x,z)").unwrap();
        let mut c = cfg(1, vec![5, 30]);
        c.model.kind = AttachmentRule::Classical;
        let t = estimate_sentence_probability(&c, &triangle).unwrap();
        assert!(t.rows.iter().all(|r| r.estimate == 0.0));
    }

    #[test]
    fn tautology_and_contradiction() {
        let c = cfg(2, vec![10, 20]);
        let yes = estimate_sentence_probability(&c, &parse("forall x. x = x").unwrap()).unwrap();
        let no = estimate_sentence_probability(&c, &parse("exists x. !(x = x)").unwrap()).unwrap();
        assert!(yes.rows.iter().all(|r| r.estimate == 1.0 && r.stderr == 0.0));
        assert!(no.rows.iter().all(|r| r.estimate == 0.0 && r.stderr == 0.0));
    }

    #[test]
    fn infeasible_rank_is_rejected() {
        let deep = parse("forall a. forall b. forall c. forall d. !(a = b & b = c & c = d & adj(a,d))").unwrap();
        let err = estimate_sentence_probability(&cfg(2, vec![100_000]), &deep).unwrap_err();
        assert!(matches!(err, Error::Infeasible { .. }));
    }

    #[test]
    fn locality_mode_is_flagged() {
        let mut c = cfg(2, vec![50]);
        c.locality = true;
        c.samples = 5;
        let t = estimate_sentence_probability(&c, &parse("exists x. exists y. adj(x,y)").unwrap()).unwrap();
        assert!(t.metadata.approximation);
        assert_eq!(t.rows[0].estimate, 1.0);
    }
}

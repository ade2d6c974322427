use std::collections::BTreeMap;

use rand::Rng as _;

use super::{par_collect, replica_graph, replica_seed, timed, EstimateTable, ExperimentConfig, PICK_STREAM, TREE_STREAM};
use crate::error::Result;
use crate::generators::{model_constants, sample_polya_point_tree};
use crate::neighborhoods::{canonical_ball, tree_code};
use crate::rng::{derive_seed, rng_from_seed};
use crate::stats::{lump_rare, tv_bootstrap_se, tv_counts};

/// Classes below this pooled mass are merged before computing TV.
pub const MIN_CLASS_MASS: f64 = 1e-3;

const BOOTSTRAP_ROUNDS: usize = 40;
const CYCLIC: &str = "cyclic";
const RARE: &str = "rare";

type Counts = BTreeMap<String, usize>;

fn merge(parts: Vec<Counts>) -> Counts {
    let mut out = Counts::new();
    for p in parts {
        for (k, c) in p {
            *out.entry(k).or_default() += c;
        }
    }
    out
}

/// Distance between `B_r` of a uniform vertex of `G_n` and the depth-`r`
/// Pólya-point tree, both reduced to canonical codes.
///
/// `samples` roots are spread over `replicas` graphs. Balls that are not
/// trees share one bucket. Rows per `n`: `tv` after merging rare classes,
/// `tv_raw` without merging, and `nontree_mass` of the graph side.
pub fn local_limit_check(cfg: &ExperimentConfig, r: usize, samples: usize) -> Result<EstimateTable> {
    cfg.validate()?;
    let constants = model_constants(cfg.model.alpha)?;
    timed(|| {
        let mut table = EstimateTable::new("locallimit", cfg);
        let per_graph = samples.div_ceil(cfg.replicas).max(1);
        let total = per_graph * cfg.replicas;
        let m = cfg.model.m;
        for &n in &cfg.n_grid {
            let graph_side = merge(par_collect(cfg, cfg.replicas, |rep| {
                let g = replica_graph(cfg, n, rep)?;
                let mut rng = rng_from_seed(replica_seed(cfg, PICK_STREAM, n, rep));
                let mut counts = Counts::new();
                for _ in 0..per_graph {
                    let code = canonical_ball(&g.ball(rng.random_range(1..=n), r)?);
                    let key = if code.is_tree() { code.as_str().to_string() } else { CYCLIC.to_string() };
                    *counts.entry(key).or_default() += 1;
                }
                Ok(counts)
            })?);
            let tree_side = merge(par_collect(cfg, cfg.replicas, |rep| {
                let mut counts = Counts::new();
                for i in 0..per_graph {
                    let seed = derive_seed(replica_seed(cfg, TREE_STREAM, n, rep), &[i as u64]);
                    let t = sample_polya_point_tree(&constants, m, r, None, seed)?;
                    *counts.entry(tree_code(&t.to_rooted_tree()).as_str().to_string()).or_default() += 1;
                }
                Ok(counts)
            })?);

            let mut rng = rng_from_seed(derive_seed(cfg.seed, &[TREE_STREAM + 1, n as u64]));
            let (a, b) = lump_rare(&graph_side, &tree_side, MIN_CLASS_MASS, RARE.to_string());
            let tv = tv_counts(&a, &b);
            let tv_se = tv_bootstrap_se(&a, &b, BOOTSTRAP_ROUNDS, &mut rng);
            let raw = tv_counts(&graph_side, &tree_side);
            let raw_se = tv_bootstrap_se(&graph_side, &tree_side, BOOTSTRAP_ROUNDS, &mut rng);
            let cyc = graph_side.get(CYCLIC).copied().unwrap_or(0) as f64 / total as f64;
            let cyc_se = (cyc * (1.0 - cyc) / total as f64).sqrt();
            table.push(n, "tv", tv, tv_se, total);
            table.push(n, "tv_raw", raw, raw_se, total);
            table.push(n, "nontree_mass", cyc, cyc_se, total);
        }
        Ok(table)
    })
}

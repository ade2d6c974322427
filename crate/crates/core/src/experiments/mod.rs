//! Monte Carlo harness.
//!
//! Each replica `(n, i)` draws from its own seed stream derived from the base
//! seed, replicas run on a rayon pool and are collected in index order, so a
//! table depends only on the configuration and never on the worker count.

mod config;
mod cycles;
mod degrees;
mod local;
mod sentence;
mod table;

pub use config::{parse_count, ExperimentConfig};
pub use cycles::{cycle_profile_census, estimate_cycle_rate, DIVERGING, STATIONARY};
pub use degrees::{degree_lower_bound, degree_profile, degree_variance_shape, uniform_mean_degree};
pub use local::{local_limit_check, MIN_CLASS_MASS};
pub use sentence::{estimate_sentence_probability, DEFAULT_COST_BUDGET};
pub use table::{EstimateTable, Metadata, Row, CSV_HEADER};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::generators::generate;
use crate::multigraph::Multigraph;
use crate::rng::derive_seed;

/// Stream tags keeping graph, vertex-sampling and limit-tree randomness apart.
const GRAPH_STREAM: u64 = 0;
const PICK_STREAM: u64 = 1;
const TREE_STREAM: u64 = 2;

fn replica_seed(cfg: &ExperimentConfig, stream: u64, n: usize, rep: usize) -> u64 {
    derive_seed(cfg.seed, &[stream, n as u64, rep as u64])
}

fn replica_graph(cfg: &ExperimentConfig, n: usize, rep: usize) -> Result<Multigraph> {
    generate(&cfg.model.with_n(n).with_seed(replica_seed(cfg, GRAPH_STREAM, n, rep)))
}

/// Map `f` over `0..count` in parallel, preserving order.
fn par_collect<T, F>(cfg: &ExperimentConfig, count: usize, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize) -> Result<T> + Sync + Send,
{
    let run = || (0..count).into_par_iter().map(&f).collect::<Result<Vec<T>>>();
    if cfg.workers == 0 {
        return run();
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?
        .install(run)
}

fn timed<F>(f: F) -> Result<EstimateTable>
where
    F: FnOnce() -> Result<EstimateTable>,
{
    let start = std::time::Instant::now();
    let mut t = f()?;
    t.metadata.wall_time_secs = start.elapsed().as_secs_f64();
    Ok(t)
}

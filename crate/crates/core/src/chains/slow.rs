use std::collections::BTreeMap;

use rand::Rng as _;
use serde::Serialize;

use super::Rate;
use crate::error::{Error, Result};
use crate::rng::rng_from_seed;

/// The conditioned chain `W_n(i, i+1) = ρ(n)/(τ(n) i + ρ(n))`,
/// `W_n(i, i-1) = τ(n) i/(τ(n) i + ρ(n))`, `W_n(0, 1) = 1`.
#[derive(Clone, Debug, Serialize)]
pub struct SlowChainConfig {
    pub rho: Rate,
    pub tau: Rate,
    pub steps: u64,
    pub seed: u64,
    /// Fraction of the trajectory, counted from the end, used for occupancy.
    pub suffix: f64,
}

impl SlowChainConfig {
    pub fn new(rho: Rate, tau: Rate, steps: u64, seed: u64) -> Self {
        SlowChainConfig { rho, tau, steps, seed, suffix: 0.5 }
    }
}

/// Visit frequencies over the trajectory suffix.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Occupancy {
    pub frequencies: BTreeMap<usize, f64>,
    pub suffix: f64,
    pub visits: u64,
}

impl Occupancy {
    pub fn get(&self, state: usize) -> f64 {
        self.frequencies.get(&state).copied().unwrap_or(0.0)
    }

    /// Total variation distance to a law given on `0..law.len()`.
    pub fn tv_to(&self, law: &[f64]) -> f64 {
        let top = law.len().max(self.frequencies.keys().next_back().map_or(0, |&k| k + 1));
        0.5 * (0..top).map(|i| (self.get(i) - law.get(i).copied().unwrap_or(0.0)).abs()).sum::<f64>()
    }
}

pub fn simulate_slow_chain(cfg: &SlowChainConfig) -> Result<Occupancy> {
    if !(cfg.suffix > 0.0 && cfg.suffix <= 1.0) {
        return Err(Error::InvalidParameter(format!("suffix fraction {} not in (0, 1]", cfg.suffix)));
    }
    if cfg.steps == 0 {
        return Err(Error::InvalidParameter("steps must be positive".into()));
    }
    let mut rng = rng_from_seed(cfg.seed);
    let first_counted = cfg.steps - ((cfg.steps as f64 * cfg.suffix).round() as u64).clamp(1, cfg.steps);
    let mut counts: Vec<u64> = Vec::new();
    let mut state = 0usize;
    for n in 1..=cfg.steps {
        state = if state == 0 {
            1
        } else {
            let (rho, tau) = (cfg.rho.at(n), cfg.tau.at(n));
            if rho <= 0.0 || tau <= 0.0 {
                return Err(Error::InvalidParameter(format!("non-positive rate at step {n}")));
            }
            let up = rho / (tau * state as f64 + rho);
            if rng.random::<f64>() < up {
                state + 1
            } else {
                state - 1
            }
        };
        if n > first_counted {
            if counts.len() <= state {
                counts.resize(state + 1, 0);
            }
            counts[state] += 1;
        }
    }
    let visits: u64 = counts.iter().sum();
    let frequencies =
        counts.iter().enumerate().filter(|(_, &c)| c > 0).map(|(i, &c)| (i, c as f64 / visits as f64)).collect();
    Ok(Occupancy { frequencies, suffix: cfg.suffix, visits })
}

use rand::Rng as _;
use serde::Serialize;

use super::Rate;
use crate::error::{Error, Result};
use crate::rng::rng_from_seed;

/// `M_{n+1} = M_n + 1` w.p. `p(n)`, `- m` w.p. `K M_n / (n+1)`, else unchanged.
#[derive(Clone, Debug, Serialize)]
pub struct MartingaleConfig {
    pub p: Rate,
    pub k: u64,
    pub m: u64,
    /// Number of transitions simulated, starting from `M_{n0} = start`.
    pub steps: u64,
    pub start: i64,
    /// Index of the first state; large enough that `p(n) + K M_n/(n+1) <= 1` can hold.
    pub n0: u64,
    pub seed: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct MartingaleRun {
    /// `values[i] = M_{n0+i}`.
    pub values: Vec<i64>,
    /// `mu[i] = μ_{n0+i}` with `μ_{n0} = (n0)_s start`, so `Z_{n0} = 0`.
    pub mu: Vec<f64>,
    pub s: u64,
    pub n0: u64,
}

/// Falling factorial `(n)_k`.
pub fn falling(n: u64, k: u64) -> f64 {
    (0..k).map(|i| n.saturating_sub(i) as f64).product()
}

impl MartingaleRun {
    /// `Z_n = (n)_s M_n − μ_n`.
    pub fn z(&self, n: u64) -> f64 {
        let i = (n - self.n0) as usize;
        falling(n, self.s) * self.values[i] as f64 - self.mu[i]
    }
}

pub fn simulate_martingale(cfg: &MartingaleConfig) -> Result<MartingaleRun> {
    if cfg.k == 0 || cfg.m == 0 || cfg.n0 == 0 {
        return Err(Error::InvalidParameter("K, m and n0 must be positive".into()));
    }
    let s = cfg.k * cfg.m;
    let mut rng = rng_from_seed(cfg.seed);
    let mut values = Vec::with_capacity(cfg.steps as usize + 1);
    let mut mu = Vec::with_capacity(cfg.steps as usize + 1);
    let mut cur = cfg.start;
    let mut comp = falling(cfg.n0, s) * cfg.start as f64;
    values.push(cur);
    mu.push(comp);
    for n in cfg.n0..cfg.n0 + cfg.steps {
        let up = cfg.p.at(n);
        let down = cfg.k as f64 * cur as f64 / (n + 1) as f64;
        let total = up + down;
        if !(0.0..=1.0).contains(&up) || down < 0.0 || total > 1.0 {
            return Err(Error::ProbabilityOverflow { step: n, up, down });
        }
        let u: f64 = rng.random();
        if u < up {
            cur += 1;
        } else if u < total {
            cur -= cfg.m as i64;
        }
        comp += falling(n + 1, s) * up;
        values.push(cur);
        mu.push(comp);
    }
    Ok(MartingaleRun { values, mu, s, n0: cfg.n0 })
}

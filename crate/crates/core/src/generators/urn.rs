//! Pólya urn representation of the sequential model.
//!
//! Conditionally on independent `ψ_i ~ Beta(m + 2mu, (2i-3)m + 2mu(i-1))`, each
//! endpoint of vertex `l` lands in `[l-1]` independently with masses
//! `φ_j = ψ_j ∏_{k>j} (1-ψ_k)`, realised by a uniform draw on `[0, S_{l-1})`.

use rand::Rng as _;
use rand_distr::{Beta, Distribution};
use serde::Serialize;

use super::{model_constants, ModelConfig};
use crate::error::{Error, Result};
use crate::multigraph::{GraphMeta, ModelKind, Multigraph, Vertex};
use crate::rng::rng_from_seed;

#[derive(Clone, Debug, Serialize)]
pub struct PolyaWeights {
    pub alpha: f64,
    /// `psi[i - 1] = ψ_i`, with `ψ_1 = 1`.
    pub psi: Vec<f64>,
    /// `phi[i - 1] = φ_i`.
    pub phi: Vec<f64>,
    /// `prefix[l - 1] = S_l`.
    pub prefix: Vec<f64>,
}

impl PolyaWeights {
    pub fn from_psi(alpha: f64, psi: Vec<f64>) -> Self {
        let n = psi.len();
        let mut phi = vec![0.0; n];
        let mut tail = 1.0;
        for i in (0..n).rev() {
            phi[i] = psi[i] * tail;
            tail *= 1.0 - psi[i];
        }
        let prefix = compensated_prefix(&phi);
        PolyaWeights { alpha, psi, phi, prefix }
    }

    /// Degenerate weights of uniform attachment: `φ_i = 1/n`, `S_i = i/n`.
    pub fn uniform(n: usize) -> Self {
        let psi = (1..=n).map(|i| 1.0 / i as f64).collect();
        let phi = vec![1.0 / n as f64; n];
        let prefix = (1..=n).map(|i| i as f64 / n as f64).collect();
        PolyaWeights { alpha: 1.0, psi, phi, prefix }
    }

    pub fn n(&self) -> usize {
        self.psi.len()
    }

    /// `S_l` for `l >= 1`; `S_0 = 0`.
    pub fn s(&self, l: usize) -> f64 {
        if l == 0 {
            0.0
        } else {
            self.prefix[l - 1]
        }
    }
}

/// Neumaier-compensated running sums.
fn compensated_prefix(xs: &[f64]) -> Vec<f64> {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    xs.iter()
        .map(|&x| {
            let t = sum + x;
            if sum.abs() >= x.abs() {
                comp += (sum - t) + x;
            } else {
                comp += (x - t) + sum;
            }
            sum = t;
            sum + comp
        })
        .collect()
}

pub fn sample_polya_weights(cfg: &ModelConfig) -> Result<PolyaWeights> {
    cfg.validate()?;
    if cfg.alpha >= 1.0 {
        return Err(Error::InvalidParameter(
            "alpha = 1 has no beta representation; use PolyaWeights::uniform".into(),
        ));
    }
    let u = model_constants(cfg.alpha)?.u.expect("alpha < 1");
    let m = cfg.m as f64;
    let mut rng = rng_from_seed(cfg.seed);
    let mut psi = Vec::with_capacity(cfg.n);
    psi.push(1.0);
    for i in 2..=cfg.n {
        let i = i as f64;
        let a = m + 2.0 * m * u;
        let b = (2.0 * i - 3.0) * m + 2.0 * m * u * (i - 1.0);
        let beta = Beta::new(a, b).map_err(|e| Error::InvalidParameter(format!("beta({a}, {b}): {e}")))?;
        psi.push(beta.sample(&mut rng));
    }
    Ok(PolyaWeights::from_psi(cfg.alpha, psi))
}

/// Attach every endpoint of vertex `l` to the `j < l` with
/// `U ∈ [S_{j-1}, S_j)`, `U` uniform on `[0, S_{l-1})`.
pub fn generate_from_weights(w: &PolyaWeights, m: usize, seed: u64) -> Result<Multigraph> {
    let n = w.n();
    if m == 0 {
        return Err(Error::InvalidParameter("m must be >= 1".into()));
    }
    let mut rng = rng_from_seed(seed);
    let mut history: Vec<(Vertex, Vertex)> = Vec::with_capacity(m * n.saturating_sub(1));
    for l in 2..=n {
        let older = &w.prefix[..l - 1];
        let top = older[l - 2];
        for _ in 0..m {
            let x = rng.random::<f64>() * top;
            let j = older.partition_point(|&s| s <= x).min(l - 2) + 1;
            history.push((l, j));
        }
    }
    Multigraph::from_history(n, m, GraphMeta { kind: ModelKind::Urn, alpha: w.alpha, seed }, history)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::AttachmentRule;

    #[test]
    fn weights_are_normalised() {
        for (m, alpha) in [(1, 0.0), (2, 0.0), (3, 0.5), (2, 0.9)] {
            let cfg = ModelConfig::new(AttachmentRule::Sequential, 5000, m, alpha, 11);
            let w = sample_polya_weights(&cfg).unwrap();
            assert!((w.s(w.n()) - 1.0).abs() < 1e-12, "S_n = {}", w.s(w.n()));
            assert!(w.phi.iter().all(|&p| p > 0.0));
            assert!(w.prefix.windows(2).all(|p| p[0] < p[1]));
        }
    }

    #[test]
    fn alpha_one_rejected() {
        let cfg = ModelConfig::new(AttachmentRule::Sequential, 10, 1, 1.0, 0);
        assert!(sample_polya_weights(&cfg).is_err());
    }

    #[test]
    fn two_vertex_weights() {
        let w = PolyaWeights::from_psi(0.0, vec![1.0, 0.3]);
        let g = generate_from_weights(&w, 4, 5).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(1, 2, 4)]);
    }

    #[test]
    fn uniform_weights_attach_uniformly() {
        let w = PolyaWeights::uniform(6);
        let mut counts = [0usize; 5];
        let reps = 60_000;
        for seed in 0..reps {
            let g = generate_from_weights(&w, 1, seed).unwrap();
            let (_, t) = g.history()[4]; // vertex 6
            counts[t - 1] += 1;
        }
        for c in counts {
            let p = c as f64 / reps as f64;
            assert!((p - 0.2).abs() < 0.01, "{p}");
        }
    }

    #[test]
    fn beta_one_one_mean() {
        // m = 1, α = 0: ψ_2 ~ Beta(1, 1)
        let reps = 100_000u64;
        let mean: f64 = (0..reps)
            .map(|s| {
                let cfg = ModelConfig::new(AttachmentRule::Sequential, 2, 1, 0.0, s);
                sample_polya_weights(&cfg).unwrap().psi[1]
            })
            .sum::<f64>()
            / reps as f64;
        assert!((mean - 0.5).abs() < 0.005, "{mean}");
    }
}

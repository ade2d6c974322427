use super::{par_collect, replica_graph, timed, EstimateTable, ExperimentConfig};
use crate::error::{Error, Result};
use crate::stats::{harmonic, mean_se, mean_var, variance_se};

/// `m(√(n/k) − 1)(1 − 1/k)`, the lower bound on the mean degree when `α = 0`.
pub fn degree_lower_bound(m: usize, n: usize, k: usize) -> f64 {
    let ratio = n as f64 / k as f64;
    m as f64 * (ratio.sqrt() - 1.0) * (1.0 - 1.0 / k as f64)
}

/// `n/k² + √(n/k)`, the variance shape when `α = 0`.
pub fn degree_variance_shape(n: usize, k: usize) -> f64 {
    let (n, k) = (n as f64, k as f64);
    n / (k * k) + (n / k).sqrt()
}

/// `m(1 + H_{n−1} − H_{k−1})`, the mean degree under uniform attachment.
pub fn uniform_mean_degree(m: usize, n: usize, k: usize) -> f64 {
    m as f64 * (1.0 + harmonic(n - 1) - harmonic(k - 1))
}

/// Mean and variance of `D_n(k)` for each `k` in `ks`, with the closed-form
/// comparison rows of the two extreme models (`lower_D{k}`, `varshape_D{k}`
/// at `α = 0`; `ua_mean_D{k}` at `α = 1`).
pub fn degree_profile(cfg: &ExperimentConfig, ks: &[usize]) -> Result<EstimateTable> {
    cfg.validate()?;
    let n_min = cfg.n_grid[0];
    if ks.is_empty() || ks.iter().any(|&k| k == 0 || k > n_min) {
        return Err(Error::InvalidParameter(format!("ks must be nonempty and lie in [1, {n_min}]")));
    }
    timed(|| {
        let mut table = EstimateTable::new("degrees", cfg);
        let m = cfg.model.m;
        for &n in &cfg.n_grid {
            let degs = par_collect(cfg, cfg.replicas, |rep| {
                let g = replica_graph(cfg, n, rep)?;
                Ok(ks.iter().map(|&k| g.deg(k) as f64).collect::<Vec<_>>())
            })?;
            let reps = degs.len();
            for (j, &k) in ks.iter().enumerate() {
                let xs: Vec<f64> = degs.iter().map(|d| d[j]).collect();
                let (mean, se) = mean_se(&xs);
                let (_, var) = mean_var(&xs);
                table.push(n, format!("mean_D{k}"), mean, se, reps);
                table.push(n, format!("var_D{k}"), var, variance_se(&xs), reps);
                if cfg.model.alpha == 0.0 {
                    table.push(n, format!("lower_D{k}"), degree_lower_bound(m, n, k), 0.0, reps);
                    table.push(n, format!("varshape_D{k}"), degree_variance_shape(n, k), 0.0, reps);
                }
                if cfg.model.alpha == 1.0 {
                    table.push(n, format!("ua_mean_D{k}"), uniform_mean_degree(m, n, k), 0.0, reps);
                }
            }
        }
        Ok(table)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(m: usize, alpha: f64, grid: Vec<usize>, replicas: usize) -> ExperimentConfig {
        let mut c = ExperimentConfig { n_grid: grid, replicas, ..ExperimentConfig::default() };
        c.model.m = m;
        c.model.alpha = alpha;
        c
    }

    #[test]
    fn newest_vertex_has_degree_m() {
        let t = degree_profile(&cfg(3, 0.4, vec![40], 30), &[40]).unwrap();
        let row = t.get(40, "mean_D40").unwrap();
        assert_eq!((row.estimate, row.stderr), (3.0, 0.0));
        assert_eq!(t.get(40, "var_D40").unwrap().estimate, 0.0);
    }

    #[test]
    fn uniform_mean_matches_harmonic_law() {
        let t = degree_profile(&cfg(2, 1.0, vec![300], 2000), &[5, 50]).unwrap();
        for k in [5, 50] {
            let emp = t.get(300, &format!("mean_D{k}")).unwrap();
            let law = t.get(300, &format!("ua_mean_D{k}")).unwrap();
            assert!((emp.estimate - law.estimate).abs() < 4.0 * emp.stderr, "k={k}: {emp:?} vs {law:?}");
        }
    }

    #[test]
    fn bound_rows_only_at_extremes() {
        let t = degree_profile(&cfg(1, 0.0, vec![100, 200], 5), &[2]).unwrap();
        assert_eq!(t.rows.len(), 2 * 4);
        let t = degree_profile(&cfg(1, 0.5, vec![100], 5), &[2]).unwrap();
        assert_eq!(t.rows.len(), 2);
        assert!(degree_profile(&cfg(1, 0.5, vec![100], 5), &[101]).is_err());
    }

    #[test]
    fn closed_forms() {
        assert_eq!(degree_lower_bound(2, 100_000, 100), 2.0 * (1000f64.sqrt() - 1.0) * 0.99);
        assert_eq!(degree_variance_shape(400, 4), 25.0 + 10.0);
        assert_eq!(uniform_mean_degree(1, 3, 1), 1.0 + 1.5);
    }
}

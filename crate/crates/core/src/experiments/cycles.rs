use std::collections::BTreeMap;

use super::{par_collect, replica_graph, timed, EstimateTable, ExperimentConfig};
use crate::error::{Error, Result};
use crate::multigraph::count_cycles_closed_by;
use crate::neighborhoods::{cycle_profile, CanonicalCode, ComponentKind};
use crate::stats::{linear_fit, mean_se};

pub const STATIONARY: &str = "stationary-candidate";
pub const DIVERGING: &str = "diverging";

/// Classes reported as their own rows, most frequent first.
const MAX_CLASS_ROWS: usize = 20;

/// First vertex of the window `(0.9n, n]` and its width.
fn window(n: usize) -> (usize, usize) {
    let lo = n * 9 / 10;
    (lo + 1, n - lo)
}

/// Rate of new `l`-cycles per step, from cycle closures in the window
/// `(0.9n, n]`.
pub fn estimate_cycle_rate(cfg: &ExperimentConfig, l: usize) -> Result<EstimateTable> {
    cfg.validate()?;
    if l < 2 {
        return Err(Error::InvalidParameter("cycle length must be >= 2".into()));
    }
    if cfg.n_grid[0] < 2 {
        return Err(Error::InvalidParameter("cycle rates need n >= 2".into()));
    }
    timed(|| {
        let mut table = EstimateTable::new("cyclerate", cfg);
        for &n in &cfg.n_grid {
            let (first, width) = window(n);
            let rates = par_collect(cfg, cfg.replicas, |rep| {
                let g = replica_graph(cfg, n, rep)?;
                let closed: usize = (first..=n).map(|w| count_cycles_closed_by(&g, w, l)).sum();
                Ok(closed as f64 / width as f64)
            })?;
            let (rho, se) = mean_se(&rates);
            let nf = n as f64;
            let scale = nf / nf.ln();
            table.push(n, "rho", rho, se, rates.len());
            table.push(n, "n_rho", nf * rho, nf * se, rates.len());
            table.push(n, "n_over_log_n_rho", scale * rho, scale * se, rates.len());
        }
        Ok(table)
    })
}

/// OLS slope of `y` on `x` and its standard error from per-point errors.
fn slope_with_se(x: &[f64], y: &[f64], se: &[f64]) -> (f64, f64) {
    let mx = x.iter().sum::<f64>() / x.len() as f64;
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    if sxx == 0.0 {
        return (0.0, f64::INFINITY);
    }
    let slope = x.iter().zip(y).map(|(a, b)| (a - mx) * b).sum::<f64>() / sxx;
    let var = x.iter().zip(se).map(|(a, s)| (a - mx).powi(2) * s * s).sum::<f64>() / (sxx * sxx);
    (slope, var.sqrt())
}

/// Distribution of the cycle profile over replicas.
///
/// Rows per `n`: `total` components, `multicycle` components, distinct
/// `classes`, then `class:<code>` mean counts for the most frequent classes.
/// Each reported class is flagged diverging when its mean grows in `log n`
/// with slope above three standard errors.
pub fn cycle_profile_census(cfg: &ExperimentConfig, r: usize) -> Result<EstimateTable> {
    cfg.validate()?;
    timed(|| {
        let mut table = EstimateTable::new("profile", cfg);
        let mut per_n: Vec<Vec<BTreeMap<CanonicalCode, usize>>> = Vec::new();
        let mut overall: BTreeMap<CanonicalCode, usize> = BTreeMap::new();
        for &n in &cfg.n_grid {
            let profiles = par_collect(cfg, cfg.replicas, |rep| {
                let g = replica_graph(cfg, n, rep)?;
                if g.is_forest() {
                    return Ok((BTreeMap::new(), 0usize));
                }
                let p = cycle_profile(&g, r)?;
                let multi = p.entries.iter().filter(|e| e.kind == ComponentKind::Multicycle).map(|e| e.count).sum();
                Ok((p.entries.into_iter().map(|e| (e.code, e.count)).collect(), multi))
            })?;
            let f = |sel: &dyn Fn(&(BTreeMap<CanonicalCode, usize>, usize)) -> f64| -> Vec<f64> {
                profiles.iter().map(sel).collect()
            };
            let (t, t_se) = mean_se(&f(&|p| p.0.values().sum::<usize>() as f64));
            let (mc, mc_se) = mean_se(&f(&|p| p.1 as f64));
            let (cl, cl_se) = mean_se(&f(&|p| p.0.len() as f64));
            table.push(n, "total", t, t_se, profiles.len());
            table.push(n, "multicycle", mc, mc_se, profiles.len());
            table.push(n, "classes", cl, cl_se, profiles.len());
            for (p, _) in &profiles {
                for (code, &c) in p {
                    *overall.entry(code.clone()).or_default() += c;
                }
            }
            per_n.push(profiles.into_iter().map(|p| p.0).collect());
        }

        let mut ranked: Vec<(&CanonicalCode, usize)> = overall.iter().map(|(k, &v)| (k, v)).collect();
        ranked.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(b.0)));
        ranked.truncate(MAX_CLASS_ROWS);
        let logs: Vec<f64> = cfg.n_grid.iter().map(|&n| (n as f64).ln()).collect();
        let mut class_rows = Vec::new();
        for (code, _) in &ranked {
            let mut means = Vec::new();
            let mut ses = Vec::new();
            for (i, &n) in cfg.n_grid.iter().enumerate() {
                let xs: Vec<f64> = per_n[i].iter().map(|p| p.get(*code).copied().unwrap_or(0) as f64).collect();
                let (mu, se) = mean_se(&xs);
                class_rows.push((i, n, format!("class:{code}"), mu, se, xs.len()));
                means.push(mu);
                ses.push(se);
            }
            let flag = if logs.len() < 2 {
                "undetermined"
            } else {
                let (slope, se) = slope_with_se(&logs, &means, &ses);
                if slope > 3.0 * se {
                    DIVERGING
                } else {
                    STATIONARY
                }
            };
            table.metadata.labels.insert(format!("class:{code}"), flag.to_string());
        }
        // Keep rows grouped by n.
        let mut rows = std::mem::take(&mut table.rows);
        class_rows.sort_by_key(|c| c.0);
        for (_, n, stat, mu, se, reps) in class_rows {
            rows.push(crate::experiments::Row { n, stat, estimate: mu, stderr: se, replicas: reps });
        }
        rows.sort_by_key(|r| cfg.n_grid.iter().position(|&n| n == r.n));
        table.rows = rows;

        let totals: Vec<f64> = table.series("total").iter().map(|r| r.estimate).collect();
        if totals.len() >= 2 {
            let (_, slope, r2_lin) = linear_fit(&logs, &totals);
            let sq: Vec<f64> = logs.iter().map(|x| x * x).collect();
            let (_, _, r2_quad) = linear_fit(&sq, &totals);
            table.metadata.summary.insert("total_vs_log_n_slope".into(), slope);
            table.metadata.summary.insert("total_vs_log_n_r2".into(), r2_lin);
            table.metadata.summary.insert("total_vs_log2_n_r2".into(), r2_quad);
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
    fn window_bounds() {
        assert_eq!(window(1000), (901, 100));
        assert_eq!(window(5), (5, 1));
        assert_eq!(window(2), (2, 1));
    }

    #[test]
    fn forests_have_no_cycles() {
        let t = estimate_cycle_rate(&cfg(1, 0.3, vec![50, 200], 20), 3).unwrap();
        assert_eq!(t.rows.len(), 6);
        assert!(t.rows.iter().all(|r| r.estimate == 0.0));
        let p = cycle_profile_census(&cfg(1, 0.0, vec![50, 200], 10), 2).unwrap();
        assert!(p.rows.iter().all(|r| r.estimate == 0.0));
        assert_eq!(p.rows.len(), 6);
    }

    #[test]
    fn uniform_triangle_rate_near_four_over_n() {
        // Two uniform picks close a triangle iff they are adjacent and distinct:
        // about 2 * (2n edges) / n^2 per step.
        let t = estimate_cycle_rate(&cfg(2, 1.0, vec![2000], 400), 3).unwrap();
        let row = t.get(2000, "n_rho").unwrap();
        assert!((row.estimate - 4.0).abs() < 4.0 * row.stderr + 0.6, "{row:?}");
    }

    #[test]
    fn profile_rows_are_rectangular() {
        let t = cycle_profile_census(&cfg(2, 0.0, vec![100, 300], 16), 2).unwrap();
        let stats = t.stats();
        assert_eq!(t.rows.len(), stats.len() * 2);
        for (i, r) in t.rows.iter().enumerate() {
            assert_eq!(r.n, if i < stats.len() { 100 } else { 300 });
        }
        assert!(t.get(300, "total").unwrap().estimate > 0.0);
        assert!(t.metadata.labels.values().all(|f| f == STATIONARY || f == DIVERGING));
    }

    #[test]
    fn slope_se_matches_two_points() {
        let (s, se) = slope_with_se(&[0.0, 1.0], &[1.0, 3.0], &[0.3, 0.4]);
        assert_eq!(s, 2.0);
        assert!((se - 0.5).abs() < 1e-12);
    }
}

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators::{AttachmentRule, ModelConfig};

/// Everything an experiment needs. The `n` and `seed` of the model template
/// are ignored: sizes come from `n_grid` and replica seeds from `seed`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub model: ModelConfig,
    pub n_grid: Vec<usize>,
    pub replicas: usize,
    /// Worker threads; `0` lets rayon decide. Results never depend on it.
    pub workers: usize,
    pub seed: u64,
    pub sentence: Option<String>,
    /// Cycle length `l`.
    pub cycle_len: usize,
    pub radius: usize,
    pub ks: Vec<usize>,
    /// Rooted samples per grid point for the local limit and locality mode.
    pub samples: usize,
    /// Evaluate sentences on a union of sampled balls instead of the whole graph.
    pub locality: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            model: ModelConfig::new(AttachmentRule::Sequential, 1, 2, 0.0, 0),
            n_grid: vec![1_000, 10_000],
            replicas: 100,
            workers: 0,
            seed: 1,
            sentence: None,
            cycle_len: 3,
            radius: 1,
            ks: vec![10, 100],
            samples: 10_000,
            locality: false,
        }
    }
}

/// Accepts plain integers and `1e5`-style shorthands.
pub fn parse_count(s: &str) -> Result<usize> {
    let s = s.trim();
    if let Ok(v) = s.parse::<usize>() {
        return Ok(v);
    }
    let bad = || Error::InvalidParameter(format!("expected a count, got `{s}`"));
    let x: f64 = s.parse().map_err(|_| bad())?;
    if x.is_finite() && x >= 0.0 && x.fract() == 0.0 && x < 2f64.powi(53) {
        Ok(x as usize)
    } else {
        Err(bad())
    }
}

fn parse_list(s: &str) -> Result<Vec<usize>> {
    s.split(',').filter(|t| !t.trim().is_empty()).map(parse_count).collect()
}

fn parse_bool(s: &str) -> Result<bool> {
    match s.trim() {
        "true" | "1" | "yes" | "on" => Ok(true),
        "false" | "0" | "no" | "off" => Ok(false),
        other => Err(Error::InvalidParameter(format!("expected a boolean, got `{other}`"))),
    }
}

fn parse_num<T: std::str::FromStr>(key: &str, s: &str) -> Result<T> {
    s.trim().parse().map_err(|_| Error::InvalidParameter(format!("bad value `{s}` for `{key}`")))
}

impl ExperimentConfig {
    /// Set one field by its flag name (`ngrid`, `alpha`, ...).
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let v = value.trim();
        match key.trim().replace('_', "-").as_str() {
            "model" => self.model.kind = v.parse()?,
            "alpha" => self.model.alpha = parse_num(key, v)?,
            "m" => self.model.m = parse_count(v)?,
            "ngrid" | "n-grid" => self.n_grid = parse_list(v)?,
            "replicas" => self.replicas = parse_count(v)?,
            "workers" => self.workers = parse_count(v)?,
            "seed" => self.seed = parse_num(key, v)?,
            "sentence" => self.sentence = Some(v.to_string()),
            "l" | "cycle-len" => self.cycle_len = parse_count(v)?,
            "r" | "radius" => self.radius = parse_count(v)?,
            "ks" => self.ks = parse_list(v)?,
            "samples" => self.samples = parse_count(v)?,
            "locality" => self.locality = parse_bool(v)?,
            other => return Err(Error::InvalidParameter(format!("unknown config key `{other}`"))),
        }
        Ok(())
    }

    /// Apply a flat `key = value` file. Blank lines and `#` comments are skipped.
    pub fn apply_kv(&mut self, text: &str) -> Result<()> {
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::InvalidParameter(format!("config line {}: expected key=value", i + 1)))?;
            self.set(k, v)?;
        }
        Ok(())
    }

    pub fn from_kv(text: &str) -> Result<Self> {
        let mut cfg = ExperimentConfig::default();
        cfg.apply_kv(text)?;
        Ok(cfg)
    }

    pub fn to_kv(&self) -> String {
        let join = |xs: &[usize]| xs.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        let mut out = format!(
            "model={}\nalpha={}\nm={}\nngrid={}\nreplicas={}\nworkers={}\nseed={}\nl={}\nr={}\nks={}\nsamples={}\nlocality={}\n",
            self.model.kind,
            self.model.alpha,
            self.model.m,
            join(&self.n_grid),
            self.replicas,
            self.workers,
            self.seed,
            self.cycle_len,
            self.radius,
            join(&self.ks),
            self.samples,
            self.locality,
        );
        if let Some(s) = &self.sentence {
            out.push_str(&format!("sentence={s}\n"));
        }
        out
    }

    pub fn validate(&self) -> Result<()> {
        self.model.with_n(1).validate()?;
        if self.replicas == 0 {
            return Err(Error::InvalidParameter("replicas must be >= 1".into()));
        }
        if self.n_grid.is_empty() {
            return Err(Error::InvalidParameter("n_grid is empty".into()));
        }
        if self.n_grid.contains(&0) {
            return Err(Error::InvalidParameter("n_grid entries must be >= 1".into()));
        }
        if self.n_grid.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidParameter("n_grid must be strictly ascending".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kv_round_trip() {
        let mut cfg = ExperimentConfig::default();
        cfg.set("ngrid", "1e3,1e4,1e5").unwrap();
        cfg.set("alpha", "0.5").unwrap();
        cfg.set("sentence", "exists x. x = x").unwrap();
        assert_eq!(cfg.n_grid, vec![1_000, 10_000, 100_000]);
        let back = ExperimentConfig::from_kv(&cfg.to_kv()).unwrap();
        assert_eq!(back, cfg);
    }

    #[test]
    fn comments_and_errors() {
        let cfg = ExperimentConfig::from_kv("# run\n\nm = 1\nmodel=classical\n").unwrap();
        assert_eq!(cfg.model.m, 1);
        assert_eq!(cfg.model.kind, AttachmentRule::Classical);
        assert!(ExperimentConfig::from_kv("bogus=1").is_err());
        assert!(ExperimentConfig::from_kv("m").is_err());
        assert!(parse_count("1.5e2").is_ok());
        assert!(parse_count("1.5").is_err());
    }

    #[test]
    fn grid_must_ascend() {
        let mut cfg = ExperimentConfig::default();
        cfg.n_grid = vec![10, 10];
        assert!(cfg.validate().is_err());
        cfg.n_grid = vec![10, 20];
        cfg.replicas = 0;
        assert!(cfg.validate().is_err());
    }
}

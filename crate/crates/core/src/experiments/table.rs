use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::ExperimentConfig;
use crate::error::{Error, Result};

pub const CSV_HEADER: &str = "n,stat,estimate,stderr,replicas";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub n: usize,
    pub stat: String,
    pub estimate: f64,
    pub stderr: f64,
    pub replicas: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub experiment: String,
    pub config: ExperimentConfig,
    pub version: String,
    pub wall_time_secs: f64,
    /// Set when results come from an approximate evaluation mode.
    pub approximation: bool,
    /// Grid-level numbers that are not per-`n` rows (fits, slopes).
    pub summary: BTreeMap<String, f64>,
    pub labels: BTreeMap<String, String>,
}

/// Rows of `(n, stat, estimate, stderr, replicas)`, ordered by grid point and
/// then by a fixed statistic order.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct EstimateTable {
    pub metadata: Metadata,
    pub rows: Vec<Row>,
}

impl EstimateTable {
    pub fn new(experiment: &str, config: &ExperimentConfig) -> Self {
        EstimateTable {
            metadata: Metadata {
                experiment: experiment.to_string(),
                config: config.clone(),
                version: env!("CARGO_PKG_VERSION").to_string(),
                ..Metadata::default()
            },
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, n: usize, stat: impl Into<String>, estimate: f64, stderr: f64, replicas: usize) {
        debug_assert!(stderr >= 0.0 || stderr.is_nan());
        self.rows.push(Row { n, stat: stat.into(), estimate, stderr, replicas });
    }

    pub fn get(&self, n: usize, stat: &str) -> Option<&Row> {
        self.rows.iter().find(|r| r.n == n && r.stat == stat)
    }

    /// Rows of one statistic in grid order.
    pub fn series(&self, stat: &str) -> Vec<&Row> {
        self.rows.iter().filter(|r| r.stat == stat).collect()
    }

    pub fn stats(&self) -> Vec<&str> {
        let mut seen = Vec::new();
        for r in &self.rows {
            if !seen.contains(&r.stat.as_str()) {
                seen.push(r.stat.as_str());
            }
        }
        seen
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in &self.rows {
            w.serialize(r).map_err(|e| Error::TableFormat(e.to_string()))?;
        }
        if self.rows.is_empty() {
            return Ok(format!("{CSV_HEADER}\n"));
        }
        let bytes = w.into_inner().map_err(|e| Error::TableFormat(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::TableFormat(e.to_string()))
    }

    /// Parse rows back; metadata is left at its default.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut rd = csv::Reader::from_reader(text.as_bytes());
        let header = rd.headers().map_err(|e| Error::TableFormat(e.to_string()))?;
        if header.iter().collect::<Vec<_>>().join(",") != CSV_HEADER {
            return Err(Error::TableFormat(format!("expected header `{CSV_HEADER}`")));
        }
        let rows = rd
            .deserialize()
            .collect::<std::result::Result<Vec<Row>, _>>()
            .map_err(|e| Error::TableFormat(e.to_string()))?;
        if let Some(r) = rows.iter().find(|r| r.stderr < 0.0) {
            return Err(Error::TableFormat(format!("negative stderr for `{}` at n={}", r.stat, r.n)));
        }
        Ok(EstimateTable { metadata: Metadata::default(), rows })
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

//! Plain-text graph files and DOT export.
//!
//! ```text
//! n m alpha model seed
//! u v multiplicity        (one line per edge, u < v, sorted by (u, v))
//! ```

use std::fmt::Write as _;

use super::{GraphMeta, Multigraph};
use crate::error::{Error, Result};

pub const DOT_MAX_VERTICES: usize = 1000;

impl Multigraph {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let meta = self.meta();
        writeln!(s, "{} {} {} {} {}", self.n(), self.m(), meta.alpha, meta.kind, meta.seed).unwrap();
        for (u, v, c) in self.edges() {
            writeln!(s, "{u} {v} {c}").unwrap();
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or(Error::GraphFormat { line: 1, msg: "missing header".into() })?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 5 {
            return Err(Error::GraphFormat { line: 1, msg: "header must be `n m alpha model seed`".into() });
        }
        let bad = |msg: &str| Error::GraphFormat { line: 1, msg: msg.to_string() };
        let n: usize = fields[0].parse().map_err(|_| bad("bad n"))?;
        let m: usize = fields[1].parse().map_err(|_| bad("bad m"))?;
        let alpha: f64 = fields[2].parse().map_err(|_| bad("bad alpha"))?;
        let kind = fields[3].parse().map_err(|_| bad("bad model"))?;
        let seed: u64 = fields[4].parse().map_err(|_| bad("bad seed"))?;

        let mut edges = Vec::new();
        let mut last = (0, 0);
        for (idx, line) in lines {
            let err = |msg: &str| Error::GraphFormat { line: idx + 1, msg: msg.to_string() };
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 3 {
                return Err(err("edge line must be `u v multiplicity`"));
            }
            let u: usize = parts[0].parse().map_err(|_| err("bad u"))?;
            let v: usize = parts[1].parse().map_err(|_| err("bad v"))?;
            let c: u32 = parts[2].parse().map_err(|_| err("bad multiplicity"))?;
            if u >= v || c == 0 {
                return Err(err("expected u < v and multiplicity >= 1"));
            }
            if (u, v) <= last {
                return Err(err("edges must be sorted by (u, v) without repeats"));
            }
            last = (u, v);
            edges.push((u, v, c));
        }
        Multigraph::from_edges(n, m, GraphMeta { kind, alpha, seed }, edges)
    }

    pub fn to_dot(&self) -> Result<String> {
        if self.n() > DOT_MAX_VERTICES {
            return Err(Error::InvalidParameter(format!(
                "DOT export limited to {DOT_MAX_VERTICES} vertices, graph has {}",
                self.n()
            )));
        }
        let mut s = String::from("graph G {\n");
        for v in self.vertices() {
            writeln!(s, "  {v};").unwrap();
        }
        for (u, v, c) in self.edges() {
            if c == 1 {
                writeln!(s, "  {u} -- {v};").unwrap();
            } else {
                writeln!(s, "  {u} -- {v} [label={c}, penwidth={c}];").unwrap();
            }
        }
        s.push_str("}\n");
        Ok(s)
    }
}

//! `key = value` run configuration.

use std::fs;
use std::path::Path;

use rc_lab::exactcore::{parse_rat, rat, ri, Rat};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub prec: usize,
    pub hbar_order: u32,
    pub grid_bound: u32,
    #[serde(serialize_with = "rats_as_strings")]
    pub kappa_samples: Vec<Rat>,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            prec: 20,
            hbar_order: 4,
            grid_bound: 4,
            kappa_samples: vec![rat(1, 2), rat(3, 2), ri(2), rat(5, 2)],
            seed: 2024,
        }
    }
}

fn rats_as_strings<S: serde::Serializer>(v: &[Rat], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|r| r.to_string()))
}

fn unquote(v: &str) -> &str {
    v.trim().trim_matches('"').trim_matches('\'').trim()
}

/// Comma-separated rationals; brackets and quotes are tolerated.
pub fn parse_rat_list(v: &str) -> Result<Vec<Rat>, String> {
    let inner = v.trim().trim_start_matches('[').trim_end_matches(']');
    inner
        .split(',')
        .map(unquote)
        .filter(|s| !s.is_empty())
        .map(|s| parse_rat(s).map_err(|e| format!("bad rational {s:?}: {e}")))
        .collect()
}

impl RunConfig {
    pub fn parse(src: &str) -> Result<Self, String> {
        let mut cfg = RunConfig::default();
        for (i, line) in src.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() || line.starts_with('[') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("line {}: expected key = value", i + 1))?;
            let (key, value) = (key.trim(), value.trim());
            let bad = |e: &dyn std::fmt::Display| format!("line {}: {key}: {e}", i + 1);
            match key {
                "prec" => cfg.prec = unquote(value).parse().map_err(|e| bad(&e))?,
                "hbar_order" => cfg.hbar_order = unquote(value).parse().map_err(|e| bad(&e))?,
                "grid_bound" => cfg.grid_bound = unquote(value).parse().map_err(|e| bad(&e))?,
                "kappa_samples" => cfg.kappa_samples = parse_rat_list(value).map_err(|e| bad(&e))?,
                "seed" => cfg.seed = unquote(value).parse().map_err(|e| bad(&e))?,
                other => return Err(format!("line {}: unknown key {other:?}", i + 1)),
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, String> {
        let src = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        Self::parse(&src)
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.prec < 2 {
            return Err(format!("prec must be at least 2, got {}", self.prec));
        }
        Ok(())
    }
}

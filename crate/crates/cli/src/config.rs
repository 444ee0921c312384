//! Run configuration: defaults, an optional `key = value` file and the
//! `SRS_ATLAS_THREADS` environment variable.

use std::path::Path;

use anyhow::{bail, Context, Result};
use srs_catalog::DEFAULT_DECODE_CAP;
use srs_core::dynamics::{DEFAULT_ORBIT_CAP, DEFAULT_WITNESS_BUDGET};
use srs_core::rational::{format_rational, parse_rational, Rational};
use srs_region::{DEFAULT_BLOWUP_FACTOR, DEFAULT_VERTEX_BUDGET};

pub const THREADS_ENV: &str = "SRS_ATLAS_THREADS";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub orbit_cap: usize,
    /// Vertex budget of single-parameter witness sets.
    pub witness_budget: usize,
    /// Vertex budget of region witness sets.
    pub region_budget: usize,
    pub blowup_factor: Rational,
    /// Sample points used by `region --verify`.
    pub sample_count: usize,
    pub decode_cap: usize,
    /// Worker threads; `None` lets the pool decide.
    pub parallel_width: Option<usize>,
    /// How often a sweep tile may be quartered after its witness set failed
    /// to stabilize.
    pub max_split_depth: u32,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            orbit_cap: DEFAULT_ORBIT_CAP,
            witness_budget: DEFAULT_WITNESS_BUDGET,
            region_budget: DEFAULT_VERTEX_BUDGET,
            blowup_factor: Rational::from_integer(DEFAULT_BLOWUP_FACTOR.into()),
            sample_count: 200,
            decode_cap: DEFAULT_DECODE_CAP,
            parallel_width: None,
            max_split_depth: 3,
        }
    }
}

impl RunConfig {
    /// Defaults, then the file at `path` if given, then the environment.
    pub fn load(path: Option<&Path>) -> Result<Self> {
        let mut cfg = Self::default();
        if let Some(p) = path {
            let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            cfg.apply_text(&text)?;
        }
        if let Ok(v) = std::env::var(THREADS_ENV) {
            cfg.set("parallel_width", &v)
                .with_context(|| format!("in {THREADS_ENV}"))?;
        }
        Ok(cfg)
    }

    /// Applies `key = value` lines; `#` starts a comment.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                bail!("line {}: expected key = value", i + 1);
            };
            self.set(k.trim(), v.trim())
                .with_context(|| format!("line {}", i + 1))?;
        }
        Ok(())
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let positive = |v: &str| -> Result<usize> {
            let n: usize = v.parse().with_context(|| format!("{v:?} is not a positive integer"))?;
            if n == 0 {
                bail!("{key} must be positive");
            }
            Ok(n)
        };
        match key {
            "orbit_cap" => self.orbit_cap = positive(value)?,
            "witness_budget" => self.witness_budget = positive(value)?,
            "region_budget" => self.region_budget = positive(value)?,
            "sample_count" => self.sample_count = positive(value)?,
            "decode_cap" => self.decode_cap = positive(value)?,
            "parallel_width" => self.parallel_width = Some(positive(value)?),
            "max_split_depth" => {
                self.max_split_depth = value.parse().with_context(|| format!("{value:?} is not an integer"))?
            }
            "blowup_factor" => {
                let r = parse_rational(value)?;
                if r < Rational::from_integer(1.into()) {
                    bail!("blowup_factor must be at least 1, got {}", format_rational(&r));
                }
                self.blowup_factor = r;
            }
            _ => bail!("unknown configuration key {key:?}"),
        }
        Ok(())
    }
}

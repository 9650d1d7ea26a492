//! `RunConfig`: line-oriented `key = value` files with dotted keys.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use signlab_core::{Error, GeodesicSegment, PrecisionPolicy, Result};

/// Every accepted key.
pub const KEYS: &[&str] = &[
    "precision.base_bits",
    "eisenstein.tol",
    "segment.x0_num",
    "segment.x0_den",
    "segment.a",
    "segment.b",
    "segment.margin",
    "grid.base",
    "grid.depth",
    "scan.t_min",
    "scan.t_max",
    "scan.t_step",
    "moments.k",
    "moments.T_grid",
    "moments.resolution",
    "output.path",
];

/// Settings shared by all subcommands. `None` means "use the command default".
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub base_bits: u32,
    pub tol: f64,
    pub x0_num: u64,
    pub x0_den: u64,
    pub a: f64,
    pub b: f64,
    pub margin: f64,
    pub grid_base: Option<usize>,
    pub grid_depth: usize,
    pub t_min: f64,
    pub t_max: f64,
    pub t_step: f64,
    pub moments_k: u32,
    pub t_grid: Vec<f64>,
    pub resolution: f64,
    pub output: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            base_bits: 128,
            tol: 1e-10,
            x0_num: 0,
            x0_den: 1,
            a: 1.0,
            b: 2.0,
            margin: 0.1,
            grid_base: None,
            grid_depth: 30,
            t_min: 20.0,
            t_max: 120.0,
            t_step: 10.0,
            moments_k: 2,
            t_grid: vec![250.0, 500.0, 1000.0, 2000.0],
            resolution: 0.05,
            output: None,
        }
    }
}

fn parse_num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    v.parse().map_err(|e| Error::Domain(format!("{key} = `{v}`: {e}")))
}

/// Comma-separated list of reals.
pub fn parse_list(key: &str, v: &str) -> Result<Vec<f64>> {
    v.split(',').map(|p| parse_num(key, p.trim())).collect()
}

/// `p/q` or a plain integer `p` (meaning `p/1`).
pub fn parse_ratio(v: &str) -> Result<(u64, u64)> {
    match v.split_once('/') {
        Some((p, q)) => Ok((parse_num("x0", p.trim())?, parse_num("x0", q.trim())?)),
        None => Ok((parse_num("x0", v.trim())?, 1)),
    }
}

impl RunConfig {
    /// Parse config text; unknown keys and duplicate keys are errors.
    pub fn parse(text: &str) -> Result<BTreeMap<String, String>> {
        let mut map = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Domain(format!("config line {}: expected `key = value`", i + 1)))?;
            let (k, v) = (k.trim(), v.trim());
            if !KEYS.contains(&k) {
                return Err(Error::Domain(format!("config line {}: unknown key `{k}`", i + 1)));
            }
            if map.insert(k.to_string(), v.to_string()).is_some() {
                return Err(Error::Domain(format!("config line {}: duplicate key `{k}`", i + 1)));
            }
        }
        Ok(map)
    }

    /// Apply parsed `key = value` pairs on top of `self`.
    pub fn apply(&mut self, map: &BTreeMap<String, String>) -> Result<()> {
        for (k, v) in map {
            match k.as_str() {
                "precision.base_bits" => self.base_bits = parse_num(k, v)?,
                "eisenstein.tol" => self.tol = parse_num(k, v)?,
                "segment.x0_num" => self.x0_num = parse_num(k, v)?,
                "segment.x0_den" => self.x0_den = parse_num(k, v)?,
                "segment.a" => self.a = parse_num(k, v)?,
                "segment.b" => self.b = parse_num(k, v)?,
                "segment.margin" => self.margin = parse_num(k, v)?,
                "grid.base" => self.grid_base = Some(parse_num(k, v)?),
                "grid.depth" => self.grid_depth = parse_num(k, v)?,
                "scan.t_min" => self.t_min = parse_num(k, v)?,
                "scan.t_max" => self.t_max = parse_num(k, v)?,
                "scan.t_step" => self.t_step = parse_num(k, v)?,
                "moments.k" => self.moments_k = parse_num(k, v)?,
                "moments.T_grid" => self.t_grid = parse_list(k, v)?,
                "moments.resolution" => self.resolution = parse_num(k, v)?,
                "output.path" => self.output = Some(PathBuf::from(v)),
                _ => unreachable!("keys are checked by parse"),
            }
        }
        Ok(())
    }

    /// Defaults overlaid with the file at `path`.
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Domain(format!("cannot read config {}: {e}", path.display())))?;
        let mut cfg = RunConfig::default();
        cfg.apply(&Self::parse(&text)?)?;
        Ok(cfg)
    }

    /// Range checks on every field.
    pub fn validate(&self) -> Result<()> {
        self.precision()?;
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::Domain(format!("eisenstein.tol must be positive, got {}", self.tol)));
        }
        self.segment()?;
        if let Some(b) = self.grid_base {
            if b < 8 {
                return Err(Error::Domain(format!("grid.base must be ≥ 8, got {b}")));
            }
        }
        if self.grid_depth > 60 {
            return Err(Error::Domain(format!("grid.depth must be ≤ 60, got {}", self.grid_depth)));
        }
        if !(self.t_step > 0.0 && self.t_min > 0.0 && self.t_max >= self.t_min && self.t_max.is_finite()) {
            return Err(Error::Domain(format!(
                "scan needs 0 < t_min ≤ t_max and t_step > 0, got {}, {}, {}",
                self.t_min, self.t_max, self.t_step
            )));
        }
        if !(self.moments_k == 1 || self.moments_k == 2) {
            return Err(Error::Domain(format!("moments.k must be 1 or 2, got {}", self.moments_k)));
        }
        if self.t_grid.is_empty() || self.t_grid.iter().any(|&t| !(t > 0.0 && t.is_finite())) {
            return Err(Error::Domain("moments.T_grid must be a non-empty list of positive reals".into()));
        }
        if !(self.resolution > 0.0 && self.resolution <= 0.25) {
            return Err(Error::Domain(format!(
                "moments.resolution must lie in (0, 0.25], got {}",
                self.resolution
            )));
        }
        Ok(())
    }

    pub fn precision(&self) -> Result<PrecisionPolicy> {
        PrecisionPolicy::new(self.base_bits)
    }

    pub fn segment(&self) -> Result<GeodesicSegment> {
        GeodesicSegment::new(self.x0_num, self.x0_den, self.a, self.b, self.margin)
    }
}

//! `key = value` experiment configuration with per-command defaults.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{Error, Result};

use super::Command;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
    /// One exact rational per line; only meaningful for `gen-set`.
    Text,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            "text" => Ok(Format::Text),
            _ => Err(Error::Config(format!("unknown format `{s}` (csv, json or text)"))),
        }
    }
}

impl Format {
    fn name(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
            Format::Text => "text",
        }
    }
}

/// How a one-dimensional rational set becomes a planar frequency set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Layout {
    /// `Λ × {0}`
    Axis,
    /// `Λ × Λ`
    Product,
}

impl FromStr for Layout {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "axis" => Ok(Layout::Axis),
            "product" => Ok(Layout::Product),
            _ => Err(Error::Config(format!("unknown layout `{s}` (axis or product)"))),
        }
    }
}

impl Layout {
    fn name(self) -> &'static str {
        match self {
            Layout::Axis => "axis",
            Layout::Product => "product",
        }
    }
}

/// Every recognised key, in the order used when echoing a configuration.
pub const KEYS: &[&str] = &[
    "seed",
    "trials",
    "s-min",
    "s-max",
    "grid",
    "q",
    "tau",
    "windows",
    "layout",
    "cell-budget",
    "exhaustive",
    "truncation",
    "eps",
    "input",
    "n-min",
    "n-max",
    "delta",
    "xi-max",
    "xi-points",
    "format",
    "out",
];

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub seed: u64,
    pub trials: u64,
    pub s_min: u32,
    pub s_max: u32,
    /// Sample counts `L1 × L2`; chosen automatically when absent.
    pub grid: Option<(usize, usize)>,
    /// Torus circumference override; must be a multiple of the natural one.
    pub q: Option<u64>,
    pub tau: f64,
    /// Number of lacunary terms `K`.
    pub windows: usize,
    pub layout: Layout,
    pub cell_budget: usize,
    pub exhaustive: bool,
    pub truncation: usize,
    pub eps: f64,
    pub input: Option<PathBuf>,
    pub n_min: i32,
    pub n_max: i32,
    pub delta: f64,
    pub xi_max: f64,
    pub xi_points: usize,
    pub format: Format,
    pub out: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn defaults(command: Command) -> Self {
        let mut c = Self {
            seed: 1,
            trials: 16,
            s_min: 0,
            s_max: 5,
            grid: None,
            q: None,
            tau: 2.0,
            windows: 4,
            layout: Layout::Axis,
            cell_budget: 1 << 22,
            exhaustive: false,
            truncation: 64,
            eps: 0.5,
            input: None,
            n_min: 0,
            n_max: 10,
            delta: 1.0,
            xi_max: 4.0,
            xi_points: 1_000_000,
            format: Format::Csv,
            out: None,
        };
        match command {
            Command::RmCheck => c.trials = 10_000,
            Command::GrowthStudy => {
                c.trials = 4;
                c.s_max = 2;
            }
            Command::FejerCheck => c.grid = Some((256, 256)),
            Command::OscCheck => c.trials = 1_000,
            Command::GenSet => {
                c.s_min = 1;
                c.s_max = 1;
                c.format = Format::Text;
            }
            Command::DecayCheck => {}
        }
        c
    }

    /// Defaults, then the file (if any), then `overrides` in order.
    pub fn resolve(command: Command, file: Option<&Path>, overrides: &[(String, String)]) -> Result<Self> {
        let mut c = Self::defaults(command);
        if let Some(path) = file {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
            for (key, value) in parse_pairs(&text)? {
                c.set(&key, &value)?;
            }
        }
        for (key, value) in overrides {
            c.set(key, value)?;
        }
        c.validate()?;
        Ok(c)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let key = key.trim().replace('_', "-");
        let value = value.trim();
        match key.as_str() {
            "seed" => self.seed = parse(&key, value)?,
            "trials" => self.trials = parse(&key, value)?,
            "s-min" => self.s_min = parse(&key, value)?,
            "s-max" => self.s_max = parse(&key, value)?,
            "grid" => self.grid = Some(parse_grid(value)?),
            "q" => self.q = Some(parse(&key, value)?),
            "tau" => self.tau = parse(&key, value)?,
            "windows" => self.windows = parse(&key, value)?,
            "layout" => self.layout = value.parse()?,
            "cell-budget" => self.cell_budget = parse(&key, value)?,
            "exhaustive" => self.exhaustive = parse(&key, value)?,
            "truncation" => self.truncation = parse(&key, value)?,
            "eps" => self.eps = parse(&key, value)?,
            "input" => self.input = Some(PathBuf::from(value)),
            "n-min" => self.n_min = parse(&key, value)?,
            "n-max" => self.n_max = parse(&key, value)?,
            "delta" => self.delta = parse(&key, value)?,
            "xi-max" => self.xi_max = parse(&key, value)?,
            "xi-points" => self.xi_points = parse(&key, value)?,
            "format" => self.format = value.parse()?,
            "out" => self.out = Some(PathBuf::from(value)),
            _ => return Err(Error::Config(format!("unknown key `{key}`"))),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |m: &str| Err(Error::Config(m.to_string()));
        if self.s_min > self.s_max {
            return fail("s-min must not exceed s-max");
        }
        if !(self.tau > 1.0) {
            return fail("tau must exceed 1");
        }
        if self.windows < 2 {
            return fail("windows must be at least 2");
        }
        if let Some((l1, l2)) = self.grid {
            if l1 == 0 || l2 == 0 || l1 % 2 == 1 || l2 % 2 == 1 {
                return fail("grid sizes must be positive and even");
            }
        }
        if self.q == Some(0) || self.cell_budget == 0 || self.truncation == 0 {
            return fail("q, cell-budget and truncation must be positive");
        }
        if !(self.eps > 0.0) || !(self.delta > 0.0 && self.delta <= 1.0) {
            return fail("eps must be positive and delta must lie in (0, 1]");
        }
        if !(self.xi_max > 0.0) || self.xi_points == 0 || self.n_min > self.n_max {
            return fail("decay sweep needs xi-max > 0, xi-points > 0 and n-min <= n-max");
        }
        Ok(())
    }

    /// Effective values of every key, for report headers.
    pub fn echo(&self) -> BTreeMap<String, String> {
        let opt = |p: &Option<PathBuf>| p.as_ref().map(|p| p.display().to_string()).unwrap_or_default();
        let values = [
            self.seed.to_string(),
            self.trials.to_string(),
            self.s_min.to_string(),
            self.s_max.to_string(),
            self.grid.map(|(a, b)| format!("{a}x{b}")).unwrap_or_else(|| "auto".into()),
            self.q.map(|q| q.to_string()).unwrap_or_else(|| "auto".into()),
            format!("{:?}", self.tau),
            self.windows.to_string(),
            self.layout.name().to_string(),
            self.cell_budget.to_string(),
            self.exhaustive.to_string(),
            self.truncation.to_string(),
            format!("{:?}", self.eps),
            opt(&self.input),
            self.n_min.to_string(),
            self.n_max.to_string(),
            format!("{:?}", self.delta),
            format!("{:?}", self.xi_max),
            self.xi_points.to_string(),
            self.format.name().to_string(),
            opt(&self.out),
        ];
        KEYS.iter().map(|k| k.to_string()).zip(values).collect()
    }
}

fn parse<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| Error::Config(format!("invalid value `{value}` for `{key}`")))
}

/// `L1xL2`.
pub fn parse_grid(value: &str) -> Result<(usize, usize)> {
    let (a, b) = value
        .split_once(['x', 'X'])
        .ok_or_else(|| Error::Config(format!("grid must look like 256x256, got `{value}`")))?;
    Ok((parse("grid", a)?, parse("grid", b)?))
}

/// Non-empty, non-comment lines of the form `key = value`.
pub fn parse_pairs(text: &str) -> Result<Vec<(String, String)>> {
    text.lines()
        .enumerate()
        .map(|(i, line)| (i, line.trim()))
        .filter(|(_, line)| !line.is_empty() && !line.starts_with('#'))
        .map(|(i, line)| {
            line.split_once('=')
                .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
                .ok_or_else(|| Error::Config(format!("line {}: expected key = value", i + 1)))
        })
        .collect()
}

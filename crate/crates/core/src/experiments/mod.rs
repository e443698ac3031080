//! Reproducible experiment drivers shared by the command-line tool and the
//! tests: configuration, the six commands, and their reports.

pub mod commands;
pub mod config;
pub mod report;

use std::str::FromStr;
use std::time::Instant;

use serde_json::json;
use sha2::{Digest, Sha256};

pub use commands::{decay, fejer_check, fit_grid, gen_set, growth_study, osc_check, rm_check, scaled_set};
pub use config::{ExperimentConfig, Format, Layout};
pub use report::{Cell, RunReport};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    RmCheck,
    GrowthStudy,
    FejerCheck,
    OscCheck,
    GenSet,
    DecayCheck,
}

impl Command {
    pub const ALL: [Command; 6] = [
        Command::RmCheck,
        Command::GrowthStudy,
        Command::FejerCheck,
        Command::OscCheck,
        Command::GenSet,
        Command::DecayCheck,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::RmCheck => "rm-check",
            Command::GrowthStudy => "growth-study",
            Command::FejerCheck => "fejer-check",
            Command::OscCheck => "osc-check",
            Command::GenSet => "gen-set",
            Command::DecayCheck => "decay-check",
        }
    }
}

impl FromStr for Command {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown command `{s}`")))
    }
}

/// Runs `command` and fills in the run metadata (`wall_clock_s`, `version`,
/// `input_hash`). Rows never depend on anything but `cfg`.
pub fn run(command: Command, cfg: &ExperimentConfig) -> Result<RunReport> {
    let start = Instant::now();
    let mut report = match command {
        Command::RmCheck => rm_check(cfg)?,
        Command::GrowthStudy => growth_study(cfg)?,
        Command::FejerCheck => fejer_check(cfg)?,
        Command::OscCheck => osc_check(cfg)?,
        Command::GenSet => gen_set(cfg)?,
        Command::DecayCheck => decay(cfg)?,
    };
    report.note("wall_clock_s", json!(start.elapsed().as_secs_f64()));
    report.note("version", env!("CARGO_PKG_VERSION"));
    report.note("input_hash", input_hash(command, cfg)?);
    Ok(report)
}

/// SHA-256 over the command, the echoed configuration and the input file.
pub fn input_hash(command: Command, cfg: &ExperimentConfig) -> Result<String> {
    let mut h = Sha256::new();
    h.update(command.name().as_bytes());
    for (k, v) in cfg.echo() {
        if k == "out" || k == "format" {
            continue;
        }
        h.update(format!("\n{k}={v}").as_bytes());
    }
    if let Some(path) = &cfg.input {
        h.update(std::fs::read(path)?);
    }
    Ok(hex::encode(h.finalize()))
}

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use twoparam::experiments::{run, Command, ExperimentConfig};
use twoparam::Error;

#[derive(Parser)]
#[command(name = "twoparam", version, about = "Two-parameter maximal multiplier experiments")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Random and exhaustive checks of the dyadic maximal inequalities.
    RmCheck(Common),
    /// Empirical operator norms over scaled rational frequency sets.
    GrowthStudy(Common),
    /// Mask projection against its Fejér-kernel form.
    FejerCheck(Common),
    /// Oscillation seminorm, region split and witness construction.
    OscCheck(Common),
    /// List the reduced rationals of each level.
    GenSet(Common),
    /// Sweep of the Fejér/box transform decay ratio.
    DecayCheck(Common),
}

#[derive(Args)]
struct Common {
    /// `key = value` configuration file.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    trials: Option<u64>,
    #[arg(long)]
    s_min: Option<u32>,
    #[arg(long)]
    s_max: Option<u32>,
    /// Grid size as `L1xL2`.
    #[arg(long)]
    grid: Option<String>,
    #[arg(long)]
    tau: Option<f64>,
    #[arg(long)]
    windows: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// csv, json or text.
    #[arg(long)]
    format: Option<String>,
    /// Any other configuration key, as `KEY=VALUE`; repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
}

impl Common {
    fn overrides(&self) -> Result<Vec<(String, String)>, Error> {
        let mut o = Vec::new();
        let mut put = |k: &str, v: Option<String>| {
            if let Some(v) = v {
                o.push((k.to_string(), v));
            }
        };
        put("seed", self.seed.map(|v| v.to_string()));
        put("trials", self.trials.map(|v| v.to_string()));
        put("s-min", self.s_min.map(|v| v.to_string()));
        put("s-max", self.s_max.map(|v| v.to_string()));
        put("grid", self.grid.clone());
        put("tau", self.tau.map(|v| v.to_string()));
        put("windows", self.windows.map(|v| v.to_string()));
        put("out", self.out.as_ref().map(|p| p.display().to_string()));
        put("format", self.format.clone());
        for kv in &self.set {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("--set expects KEY=VALUE, got `{kv}`")))?;
            o.push((k.to_string(), v.to_string()));
        }
        Ok(o)
    }
}

fn execute(cli: Cli) -> Result<u64, Error> {
    let (command, common) = match cli.command {
        Sub::RmCheck(c) => (Command::RmCheck, c),
        Sub::GrowthStudy(c) => (Command::GrowthStudy, c),
        Sub::FejerCheck(c) => (Command::FejerCheck, c),
        Sub::OscCheck(c) => (Command::OscCheck, c),
        Sub::GenSet(c) => (Command::GenSet, c),
        Sub::DecayCheck(c) => (Command::DecayCheck, c),
    };
    let cfg = ExperimentConfig::resolve(command, common.config.as_deref(), &common.overrides()?)?;
    let report = run(command, &cfg)?;
    match &cfg.out {
        Some(path) => report.write(cfg.format, std::io::BufWriter::new(std::fs::File::create(path)?))?,
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            report.write(cfg.format, &mut lock)?;
            lock.flush()?;
        }
    }
    eprintln!(
        "{}: {} rows, {} violations, {:.3} s",
        command.name(),
        report.rows.len(),
        report.violations,
        report.summary.get("wall_clock_s").and_then(|v| v.as_f64()).unwrap_or(0.0)
    );
    Ok(report.violations)
}

fn main() -> ExitCode {
    if let Some(n) = std::env::var("TWOPARAM_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().ok();
    }
    match execute(Cli::parse()) {
        Ok(0) => ExitCode::SUCCESS,
        Ok(_) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

//! Empirical operator norms for the scaled rational sets, as the CLI's
//! `growth-study` prints them.

use twoparam::experiments::{run as run_command, Command, ExperimentConfig};

pub fn run() -> twoparam::Result<()> {
    let cfg = ExperimentConfig::resolve(
        Command::GrowthStudy,
        None,
        &[("s-max".into(), "1".into()), ("trials".into(), "2".into())],
    )?;
    let report = run_command(Command::GrowthStudy, &cfg)?;
    report.write_csv(std::io::stdout().lock())
}

#[allow(dead_code)]
fn main() -> twoparam::Result<()> {
    run()
}

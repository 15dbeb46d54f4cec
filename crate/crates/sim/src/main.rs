use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use cqed_sim::{run, Scenario, ScenarioConfig, SimError};

#[derive(Parser)]
#[command(name = "cqed", version, about = "Two qubits and a ququart in a two-mode cavity")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Two-qubit → ququart state transfer.
    Transfer(Common),
    /// Preparation of the asymmetric maximally entangled state.
    Ames(Common),
    /// AMES fidelity under time and coupling errors.
    Scan(Common),
    /// Teleportation through the prepared AMES.
    Teleport(Common),
    /// Full model against the effective model, plus the typo ledger.
    ValidateEffective(Common),
}

#[derive(Args)]
struct Common {
    /// JSON scenario config; defaults apply when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory (overrides the config).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Seed for random inputs and measurements (overrides the config).
    #[arg(long)]
    seed: Option<u64>,
    /// Read frequencies as rad/s instead of Hz.
    #[arg(long)]
    angular: bool,
}

fn execute(scenario: Scenario, args: Common) -> Result<i32, SimError> {
    let mut config = match &args.config {
        Some(path) => ScenarioConfig::from_path(path)?,
        None => ScenarioConfig::default(),
    };
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    if args.angular {
        config.angular = true;
    }
    let out = args.out.unwrap_or_else(|| config.io.out_dir.clone());
    let report = run(scenario, &config, &out)?;
    for check in report.summary.checks.iter().filter(|c| !c.passed) {
        eprintln!("{:?} check failed: {} = {:e} (bound {:e})", check.kind, check.name, check.value, check.bound);
    }
    println!("{}", out.join(&report.summary_file).display());
    Ok(report.exit_code())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (scenario, args) = match cli.command {
        Command::Transfer(a) => (Scenario::Transfer, a),
        Command::Ames(a) => (Scenario::Ames, a),
        Command::Scan(a) => (Scenario::Scan, a),
        Command::Teleport(a) => (Scenario::Teleport, a),
        Command::ValidateEffective(a) => (Scenario::ValidateEffective, a),
    };
    match execute(scenario, args) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

// Copyright 2026 The corrnoise Authors
// SPDX-License-Identifier: Apache-2.0

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use corrnoise_cli::{analyze, load_config, sweep, verify, CliError, Outcome, EXIT_FAILURE};

/// Effective noise strength bounds for correlated Hamiltonian noise.
#[derive(Debug, Parser)]
#[command(name = "corrnoise", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate the noise-strength bound for a model.
    Analyze(Common),
    /// Compute exact fault-path operators and check them against the bound.
    Verify(Common),
    /// Re-evaluate the bound over a list of parameter values.
    Sweep {
        #[command(flatten)]
        common: Common,
        /// Write the sweep table (CSV) here instead of standard output.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct Common {
    /// TOML configuration file.
    config: PathBuf,
    /// Write the structured JSON report here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Suppress the human-readable output.
    #[arg(long)]
    quiet: bool,
}

fn write(path: &PathBuf, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError::Failure(format!("cannot write {}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let (common, csv_path) = match &cli.command {
        Command::Analyze(c) | Command::Verify(c) => (c, None),
        Command::Sweep { common, csv } => (common, csv.as_ref()),
    };
    let loaded = load_config(&common.config)?;
    let outcome: Outcome = match &cli.command {
        Command::Analyze(_) => analyze(&loaded)?,
        Command::Verify(_) => verify(&loaded)?,
        Command::Sweep { .. } => sweep(&loaded)?,
    };
    if let Some(path) = &common.out {
        write(path, &outcome.report.to_json()?)?;
    }
    match (csv_path, &outcome.csv) {
        (Some(path), Some(csv)) => write(path, csv)?,
        _ if !common.quiet => print!("{}", outcome.text),
        _ => {}
    }
    if let Some(e) = &outcome.report.error {
        if outcome.exit == EXIT_FAILURE {
            eprintln!("error: {e}");
        }
    }
    Ok(outcome.exit)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

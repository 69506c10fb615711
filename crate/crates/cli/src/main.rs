//! `gossiplab`: seeded Push-Pull experiments on random k-trees and random
//! k-Apollonian networks.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use gossiplab::experiment::{cmd_generate, cmd_lowerbound, cmd_report, cmd_spread, cmd_structure, ExperimentConfig};
use gossiplab::{Error, Family};

const EXIT_CONFIG: u8 = 2;
const EXIT_RUNTIME: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "gossiplab", version, about = "Push-Pull rumor spreading experiments on random k-trees")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write one graph file per (size, trial) cell.
    Generate(RunArgs),
    /// Run Push-Pull once per cell and write spread.csv.
    Spread(RunArgs),
    /// Piece statistics, pattern barriers and forced-barrier runs (k-trees).
    Lowerbound(RunArgs),
    /// Structural survey: clustering, diameter, degrees, expansion, forest.
    Structure(RunArgs),
    /// Fit growth exponents over one or more spread CSVs.
    Report(ReportArgs),
}

/// Flags override keys of the config file.
#[derive(Debug, Args)]
struct RunArgs {
    /// JSON experiment config.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Master seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_parser = parse_family)]
    family: Option<Family>,
    #[arg(long)]
    k: Option<usize>,
    /// Comma-separated growth step counts, e.g. 1000,10000.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    sizes: Option<Vec<usize>>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    max_rounds: Option<usize>,
    /// "Almost all" threshold in (0, 1].
    #[arg(long)]
    fraction: Option<f64>,
}

#[derive(Debug, Args)]
struct ReportArgs {
    /// spread.csv files to pool.
    #[arg(required = true)]
    csv: Vec<PathBuf>,
    /// Also write report.json and report.txt into this directory.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

impl RunArgs {
    fn into_config(self) -> Result<ExperimentConfig, Error> {
        let mut c = match &self.config {
            Some(path) => ExperimentConfig::from_path(path)?,
            None => ExperimentConfig::default(),
        };
        if let Some(v) = self.seed {
            c.master_seed = v;
        }
        if let Some(v) = self.out {
            c.out_dir = v;
        }
        if let Some(v) = self.family {
            c.family = v;
        }
        if let Some(v) = self.k {
            c.k = v;
        }
        if let Some(v) = self.sizes {
            c.sizes = v;
        }
        if let Some(v) = self.trials {
            c.trials = v;
        }
        if let Some(v) = self.max_rounds {
            c.max_rounds = Some(v);
        }
        if let Some(v) = self.fraction {
            c.fraction = v;
        }
        c.validate()?;
        Ok(c)
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Generate(args) => {
            let paths = cmd_generate(&args.into_config()?)?;
            println!("wrote {} graph files", paths.len());
        }
        Command::Spread(args) => {
            println!("wrote {}", cmd_spread(&args.into_config()?)?.display());
        }
        Command::Lowerbound(args) => {
            let paths = cmd_lowerbound(&args.into_config()?)?;
            for p in [paths.records, paths.piece_sizes, paths.barriers] {
                println!("wrote {}", p.display());
            }
        }
        Command::Structure(args) => {
            let paths = cmd_structure(&args.into_config()?)?;
            for p in [paths.records, paths.nice] {
                println!("wrote {}", p.display());
            }
        }
        Command::Report(args) => {
            let report = cmd_report(&args.csv)?;
            println!("{report}");
            if let Some(dir) = args.out {
                fs::create_dir_all(&dir)?;
                fs::write(dir.join("report.json"), report.to_json()?)?;
                fs::write(dir.join("report.txt"), format!("{report}\n"))?;
            }
        }
    }
    Ok(())
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Config(_) | Error::InvalidParameter(_) | Error::InvalidFraction(_) => EXIT_CONFIG,
        _ => EXIT_RUNTIME,
    }
}

fn main() -> ExitCode {
    // clap exits with status 2 on usage errors, matching EXIT_CONFIG.
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

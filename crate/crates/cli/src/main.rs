//! `dyncut` — replay and generate edge-connectivity update streams.
//!
//! `dyncut run` feeds a stream file through the randomized engine, the
//! deterministic engine, or the static oracle, optionally cross-checking
//! every update against Stoer–Wagner and emitting a per-event CSV.
//! `dyncut gen` writes workload streams. The process exits 0 iff the
//! replay had zero mismatches.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use dyncut::harness::{self, EngineKind, RunConfig};

#[derive(Parser)]
#[command(name = "dyncut", version, about = "fully dynamic exact edge connectivity")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    Rand,
    Det,
    Oracle,
}

impl From<EngineArg> for EngineKind {
    fn from(e: EngineArg) -> Self {
        match e {
            EngineArg::Rand => EngineKind::Rand,
            EngineArg::Det => EngineKind::Det,
            EngineArg::Oracle => EngineKind::Oracle,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Replay a stream file through an engine
    Run {
        #[arg(long, value_enum)]
        engine: EngineArg,
        #[arg(long)]
        stream: PathBuf,
        /// cross-check every update against the exact oracle
        #[arg(long)]
        check: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// write the per-event report to this CSV file
        #[arg(long)]
        csv: Option<PathBuf>,
        /// rand engine: repetitions per degree range
        #[arg(long)]
        t_reps: Option<usize>,
        /// rand engine: certificate color constant; det engine: fixed tau
        #[arg(long)]
        tau_const: Option<f64>,
    },
    /// Generate a workload stream file
    Gen {
        /// one of: random, planted-cut, tau-oscillate, delete-heavy
        #[arg(long)]
        workload: String,
        #[arg(long)]
        n: usize,
        /// number of update events (each followed by a query)
        #[arg(long)]
        steps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Run { engine, stream, check, seed, csv, t_reps, tau_const } => {
            let text = fs::read_to_string(&stream)
                .map_err(|e| format!("{}: {e}", stream.display()))?;
            let parsed = harness::parse_stream(&text).map_err(|e| e.to_string())?;
            let cfg = RunConfig { check, seed, t_reps, tau_const };
            let report =
                harness::run(engine.into(), &parsed, cfg).map_err(|e| e.to_string())?;
            if let Some(path) = csv {
                fs::write(&path, report.to_csv())
                    .map_err(|e| format!("{}: {e}", path.display()))?;
            }
            println!(
                "events {} mismatches {} work {} max_us {} mean_us {:.1}",
                report.rows.len(),
                report.mismatches,
                report.total_work,
                report.max_micros,
                report.mean_micros
            );
            Ok(if report.mismatches == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Command::Gen { workload, n, steps, seed, out } => {
            let stream = harness::generate(&workload, n, steps, seed)
                .map_err(|e| e.to_string())?;
            fs::write(&out, stream.render()).map_err(|e| format!("{}: {e}", out.display()))?;
            println!("wrote {} events to {}", stream.events.len(), out.display());
            Ok(ExitCode::SUCCESS)
        }
    }
}

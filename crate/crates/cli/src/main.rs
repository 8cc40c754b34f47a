//! `ceva`: command-line checks for cevian concurrency.
//!
//! Every command prints one JSON report on stdout and exits with
//! 0 (concurrent / found / ok), 1 (not concurrent / not found),
//! 2 (input error) or 3 (criterion and oracle disagree).

mod commands;
mod render;

use std::io::{IsTerminal, Write};
use std::panic::{self, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use ceva_core::rank_search::RankSearchConfig;
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use commands::{Outcome, RandomKind, INPUT_ERROR};

#[derive(Parser)]
#[command(name = "ceva", version, about = "Exact cevian concurrency checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Planar check for a triangle and three cevian feet.
    Check2d { input: PathBuf },
    /// Concurrency of the cevian spans of a face instance.
    Check {
        #[arg(required_unless_present = "batch")]
        input: Option<PathBuf>,
        /// Also intersect the spans directly and compare.
        #[arg(long)]
        oracle: bool,
        /// Check every *.json file in a directory.
        #[arg(long, conflicts_with = "input")]
        batch: Option<PathBuf>,
    },
    /// Write a seeded random face instance.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Kind::Positive)]
        kind: Kind,
        /// Target projective dimension for `--kind rank`.
        #[arg(long, default_value_t = 1)]
        r: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Membership and lifting on the degree-six del Pezzo surface.
    Dp6 {
        #[command(subcommand)]
        action: Dp6,
    },
    /// Numerical search for a low-rank completion and transversal.
    RankSearch {
        input: PathBuf,
        #[arg(long, default_value_t = 0)]
        r: usize,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long, default_value_t = 500)]
        max_iter: usize,
        #[arg(long, default_value_t = 10)]
        restarts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum Dp6 {
    /// Test (x, d, e, f) against the surface and (d, e, f) against the hypersurface.
    Check { input: PathBuf },
    /// Recover x from (d, e, f).
    Lift { input: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Positive,
    Perturbed,
    /// Rows drawn from a random rank-(r+1) matrix.
    Rank,
}

#[derive(Serialize)]
struct RunReport {
    command: Vec<String>,
    input_sha256: Option<String>,
    exit_code: i32,
    result: Value,
    oracle: Option<Value>,
    wall_time_ms: f64,
}

fn dispatch(command: &Command) -> Outcome {
    match command {
        Command::Check2d { input } => commands::check2d(input),
        Command::Check {
            input,
            oracle,
            batch,
        } => match (input, batch) {
            (_, Some(dir)) => commands::check_batch(dir, *oracle),
            (Some(path), None) => commands::check(path, *oracle),
            (None, None) => unreachable!("clap requires an input or --batch"),
        },
        Command::Random {
            n,
            k,
            seed,
            kind,
            r,
            out,
        } => {
            let kind = match kind {
                Kind::Positive => RandomKind::Positive,
                Kind::Perturbed => RandomKind::Perturbed,
                Kind::Rank => RandomKind::Rank(*r),
            };
            commands::random(*n, *k, *seed, kind, out.as_deref())
        }
        Command::Dp6 {
            action: Dp6::Check { input },
        } => commands::dp6_check(input),
        Command::Dp6 {
            action: Dp6::Lift { input },
        } => commands::dp6_lift(input),
        Command::RankSearch {
            input,
            r,
            tol,
            max_iter,
            restarts,
            seed,
        } => {
            let cfg = RankSearchConfig {
                r: *r,
                tol: *tol,
                max_iter: *max_iter,
                restarts: *restarts,
                seed: *seed,
            };
            commands::rank_search(input, &cfg)
        }
    }
}

fn diagnose(message: &str) {
    let colour = std::io::stderr().is_terminal() && std::env::var_os("NO_COLOR").is_none();
    let label = if colour {
        "\x1b[1;31merror\x1b[0m"
    } else {
        "error"
    };
    let _ = writeln!(std::io::stderr(), "{label}: {message}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    panic::set_hook(Box::new(|_| {}));
    let outcome =
        panic::catch_unwind(AssertUnwindSafe(|| dispatch(&cli.command))).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "unknown failure".into());
            let mut out = Outcome::from_error(&ceva_core::Error::InvalidArgument(msg));
            out.code = INPUT_ERROR;
            out
        });
    let _ = panic::take_hook();

    if let Some(d) = &outcome.diagnostic {
        diagnose(d);
    }
    let report = RunReport {
        command: std::env::args().skip(1).collect(),
        input_sha256: outcome.digest,
        exit_code: outcome.code,
        result: outcome.result,
        oracle: outcome.oracle,
        wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
    };
    let text = serde_json::to_string_pretty(&report).expect("report serialises");
    let _ = writeln!(std::io::stdout(), "{text}");
    ExitCode::from(outcome.code as u8)
}

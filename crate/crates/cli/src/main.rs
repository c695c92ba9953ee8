//! `hasse`: classification, curve sets, isogeny graphs and density scans
//! from the command line. Results go to stdout as JSON (or DOT); errors go
//! to stderr as one JSON object.
//!
//! Exit codes: 0 success, 1 a negative finding (non-isomorphic graphs, a
//! gap violation, an unsupported graph), 2 usage or environment error.

mod commands;
mod output;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hasse_core::density::Over;
use hasse_core::pairs::TableCell;

use crate::output::Failure;

#[derive(Debug, Parser)]
#[command(name = "hasse", version, about = "Elliptic curves across Hasse pairs of prime powers")]
struct Cli {
    /// Directory holding phi_<l>.txt; falls back to $HASSE_MODPOLY_DIR, then ./data/modpoly
    #[arg(long, global = true)]
    modpoly_dir: Option<PathBuf>,
    /// Worker threads for sweeps (default: available cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Add wall time in milliseconds to summary trailers
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct PairArgs {
    q1: u64,
    q2: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OverArg {
    Primes,
    PrimePowers,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Invariants and curve-set statuses of a pair
    Classify {
        #[command(flatten)]
        pair: PairArgs,
        /// Enumerate both curve sets and list their j-invariants
        #[arg(long)]
        curves: bool,
    },
    /// Isogeny graphs of both sides
    Graph {
        #[command(flatten)]
        pair: PairArgs,
        /// Isogeny degrees, comma separated, from {2,3,5,7,11,13,17,19}
        #[arg(long, value_delimiter = ',')]
        degrees: Option<Vec<u64>>,
        #[arg(long, value_enum, default_value = "dot")]
        format: Format,
    },
    /// Decide whether the two graphs are isomorphic
    VerifyIso {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, value_delimiter = ',')]
        degrees: Option<Vec<u64>>,
        /// Accept supersingular sides (graphs on classes, Frobenius colour only)
        #[arg(long)]
        allow_ss: bool,
    },
    /// Pairs whose curve sets are both empty
    SearchEmpty {
        #[arg(long)]
        max: u64,
    },
    /// Consecutive gaps against the Andrica bound
    Andrica {
        #[arg(long)]
        max: u64,
        #[arg(long, value_enum, default_value = "primes")]
        over: OverArg,
    },
    /// Prime Hasse partners of every prime up to the bound
    Partners {
        #[arg(long)]
        max: u64,
    },
    /// Stream classified Hasse pairs
    Enumerate {
        #[arg(long)]
        max: u64,
        /// Keep one table cell only, e.g. ordinary-ordinary
        #[arg(long)]
        filter: Option<TableCell>,
        /// Skip pairs with an even member
        #[arg(long)]
        odd_only: bool,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => return report(Failure::usage(e.kind().to_string(), e.to_string().trim())),
    };
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = run(cli, &mut out);
    let flushed = out.flush();
    match (result, flushed) {
        (Ok(code), Ok(())) => ExitCode::from(code),
        (Err(f), _) => report(f),
        (Ok(_), Err(e)) => report(Failure::environment(e.to_string())),
    }
}

fn report(failure: Failure) -> ExitCode {
    eprintln!("{}", failure.to_json());
    ExitCode::from(2)
}

fn run(cli: Cli, out: &mut dyn Write) -> Result<u8, Failure> {
    let ctx = commands::Context::new(cli.modpoly_dir, cli.jobs, cli.timing)?;
    match cli.command {
        Command::Classify { pair, curves } => commands::classify(&ctx, pair.q1, pair.q2, curves, out),
        Command::Graph { pair, degrees, format } => {
            commands::graph(&ctx, pair.q1, pair.q2, degrees, format == Format::Dot, out)
        }
        Command::VerifyIso { pair, degrees, allow_ss } => {
            commands::verify_iso(&ctx, pair.q1, pair.q2, degrees, allow_ss, out)
        }
        Command::SearchEmpty { max } => commands::search_empty(&ctx, max, out),
        Command::Andrica { max, over } => {
            let over = match over {
                OverArg::Primes => Over::Primes,
                OverArg::PrimePowers => Over::PrimePowers,
            };
            commands::andrica(&ctx, max, over, out)
        }
        Command::Partners { max } => commands::partners(&ctx, max, out),
        Command::Enumerate { max, filter, odd_only } => commands::enumerate(&ctx, max, filter, odd_only, out),
    }
}

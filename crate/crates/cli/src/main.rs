//! `rmclass`: count affine equivalence classes of Boolean functions.
//!
//! Every command prints `key=value` lines to stdout. Exit status is 0 on
//! success, 1 when `verify` finds a mismatch, 2 for bad input, and 3 when an
//! internal invariant fails.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use rmclass::{Error, DEFAULT_SEED};

#[derive(Parser, Debug)]
#[command(name = "rmclass", version, about = "Affine equivalence classes of R(s,n)/R(k,n)")]
struct Cli {
    /// Cap on worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count classes of R(s,n)/R(k,n).
    Count {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: usize,
        /// Quotient degree; -1 means no quotient.
        #[arg(long, allow_negative_numbers = true)]
        k: i32,
        #[command(flatten)]
        cells: CellArgs,
    },
    /// Recompute the published counts and compare.
    Verify {
        /// Only check entries with n up to this value.
        #[arg(long, default_value_t = 8)]
        max_n: usize,
        /// Only check one table (I, II, III, ...).
        #[arg(long)]
        table: Option<String>,
        /// Read expected counts from this file instead of the built-in table.
        #[arg(long)]
        oracle: Option<PathBuf>,
        #[command(flatten)]
        cells: CellArgs,
    },
    /// Compute conjugacy cells of AGL(n,2) and write them to a file.
    Classes {
        #[arg(long)]
        n: usize,
        /// Output path (stdout when omitted).
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = ProviderKind::Canonical)]
        provider: ProviderKind,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Print the matrix by which an element acts on R(s,n)/R(k,n).
    Tau {
        /// `n`, the rows of A, then b, separated by whitespace,
        /// e.g. "3 110 010 001 100".
        #[arg(long)]
        element: String,
        #[arg(long)]
        s: usize,
        #[arg(long, allow_negative_numbers = true)]
        k: i32,
    },
    /// Check that every space has the same count as its mirror.
    Symmetry {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        cells: CellArgs,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ProviderKind {
    Exhaustive,
    Canonical,
    Import,
}

#[derive(Args, Debug)]
struct CellArgs {
    #[arg(long, value_enum, default_value_t = ProviderKind::Canonical)]
    provider: ProviderKind,
    /// Cell file for `--provider import`.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Seed for the canonical provider's generator sampling.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::InexactDivision { .. } => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: cannot configure {threads} threads: {e}");
            return ExitCode::from(2);
        }
    }
    match commands::run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

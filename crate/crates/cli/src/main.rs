//! `lefschetz`: validate factorization files, report invariants, run the construction
//! recipe and apply Hurwitz schedules.
//!
//! Exit codes: 0 success, 1 validation failure, 2 infeasible or absent result, 3 I/O or
//! schema error. Machine-readable output goes to stdout (or `--output`); diagnostics go to
//! stderr.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "lefschetz", version, about = "Exact calculus on positive Dehn-twist factorizations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a factorization file: shape, relation, spin declaration.
    Validate {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Euler characteristic, signature, spin verdict, homeomorphism type, certificates.
    Invariants {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        out: OutputArgs,
        /// Include certificate payloads.
        #[arg(long)]
        certify: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Run one step of the construction recipe.
    Build {
        #[command(subcommand)]
        step: BuildStep,
    },
    /// Apply a Hurwitz schedule such as "R1,L2,C" and compare invariants before and after.
    Hurwitz {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        out: OutputArgs,
        #[arg(long)]
        schedule: String,
    },
}

#[derive(Subcommand)]
enum BuildStep {
    /// Stack conjugates of a seed so that the distinguished cycle hits every basis curve.
    Stack {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        out: OutputArgs,
        /// 1-based index of the distinguished non-separating twist.
        #[arg(long, default_value_t = 1)]
        cycle: usize,
        /// Only use conjugators preserving the declared spin form.
        #[arg(long)]
        spin_preserving: bool,
        /// Number of conjugates (targets a1, b1, a2, ... in order).
        #[arg(long)]
        copies: Option<usize>,
        /// Explicit conjugator word; repeat for each copy.
        #[arg(long = "conjugator")]
        conjugators: Vec<String>,
    },
    /// Hurwitz-move to the dual prefix t(a1) t(b1) ... t(ag) t(bg).
    Normalize {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Z = Y Y.
    Z {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Z' = Y X' Y.
    Zprime {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        out: OutputArgs,
        /// The middle summand X' (path or fixture:NAME).
        #[arg(long = "x-prime")]
        x_prime: String,
        /// Fail unless Y and X' declare the same spin form.
        #[arg(long)]
        require_spin: bool,
    },
    /// Y Y^phi.
    Twisted {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        out: OutputArgs,
        /// Gluing map as a twist word, e.g. "t(b9)*t(a9)".
        #[arg(long)]
        phi: String,
    },
    /// Append further copies of Y to Z.
    Grow {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        out: OutputArgs,
        /// The repeated summand Y (path or fixture:NAME).
        #[arg(long)]
        summand: String,
        #[arg(long, default_value_t = 1)]
        times: usize,
    },
}

/// Where the primary factorization comes from.
#[derive(Args, Clone, Debug)]
#[group(required = true, multiple = false)]
struct InputArgs {
    /// Factorization file, or fixture:NAME.
    #[arg(short, long, visible_alias = "seed")]
    input: Option<String>,
    /// Built-in fixture name.
    #[arg(long)]
    fixture: Option<String>,
    /// External seed data file.
    #[arg(long)]
    seed_file: Option<PathBuf>,
}

#[derive(Args, Clone, Debug)]
struct OutputArgs {
    /// Write the result here instead of stdout.
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Where to write the provenance log or comparison (default: next to --output, else stderr).
    #[arg(long)]
    log: Option<PathBuf>,
    /// Omit timestamps so identical runs give identical bytes.
    #[arg(long)]
    reproducible: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

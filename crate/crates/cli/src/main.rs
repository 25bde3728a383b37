//! `lot`: validate, reduce, certify and export labeled oriented forests.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

/// Exit status contract.
pub mod exit {
    pub const OK: u8 = 0;
    pub const PROPERTY_FAILED: u8 = 1;
    pub const BAD_INPUT: u8 = 2;
    pub const HYPOTHESIS_FAILED: u8 = 3;
}

#[derive(Debug, Parser)]
#[command(
    name = "lot",
    version,
    about = "Certificates for labeled oriented trees and forests"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExportKind {
    Link,
    Selection,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Report reducedness and classification; exit 0 iff a reduced injective LOF.
    Validate {
        path: PathBuf,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Apply reduction moves and print the reduced log.
    Reduce {
        path: PathBuf,
        /// Write the reduced log here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run the certification pipeline.
    Certify {
        path: PathBuf,
        /// Use the relative pipeline.
        #[arg(long)]
        relative: bool,
        /// Explicit part for the relative pipeline, as comma-separated edge
        /// ids; repeat for several parts.
        #[arg(long = "part", requires = "relative")]
        parts: Vec<String>,
        /// Write the canonical certificate JSON here (`-` for stdout).
        #[arg(long)]
        json: Option<PathBuf>,
        /// Write link.dot and selection.dot into this directory.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Export the link or the selection graph as Graphviz.
    Export {
        kind: ExportKind,
        path: PathBuf,
        /// Output file; stdout when absent.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Write a reproducible corpus of reduced injective LOTs and a manifest.
    Generate {
        /// Vertices per instance.
        #[arg(short, long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Compare the production checks with the brute-force oracles on one input.
    OracleCheck {
        path: PathBuf,
        /// Size cap for exhaustive searches; overrides LOT_ORACLE_CAP.
        #[arg(long)]
        cap: Option<usize>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Validate { path, json } => commands::validate(&path, json),
        Command::Reduce { path, output } => commands::reduce(&path, output.as_deref()),
        Command::Certify {
            path,
            relative,
            parts,
            json,
            dot,
        } => commands::certify(&path, relative, &parts, json.as_deref(), dot.as_deref()),
        Command::Export { kind, path, dot } => {
            commands::export(&path, kind == ExportKind::Link, dot.as_deref())
        }
        Command::Generate {
            n,
            count,
            seed,
            out,
        } => commands::generate(n, count, seed, &out),
        Command::OracleCheck { path, cap } => commands::oracle_check(&path, cap),
    };
    ExitCode::from(code)
}

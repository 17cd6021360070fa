//! Command-line surface for the knot Floer engine: build complexes from
//! spec files, compute invariants and surgery modules, validate diagrams,
//! run first-homology checks, and replay the built-in regression corpus.

mod commands;
mod corpus;
mod docs;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "knotfloer", version, about = "Knot Floer homology and surgery calculator")]
struct Cli {
    /// Emit the result as a JSON document.
    #[arg(long, global = true, conflicts_with = "table")]
    json: bool,

    /// Emit the result as human-readable tables (the default).
    #[arg(long, global = true)]
    table: bool,

    /// Truncation order for power-series homology (overrides the spec file).
    #[arg(long, global = true, value_name = "N")]
    truncation: Option<u32>,

    /// Extra columns kept on each side of the surgery truncation window.
    #[arg(long, global = true, value_name = "K")]
    window_slack: Option<u32>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Knot Floer invariants of the knot described by a spec file.
    Hfk { spec: PathBuf },

    /// HF^- of an integer surgery on the knot described by a spec file.
    Surgery {
        spec: PathBuf,
        /// Surgery coefficient (nonzero).
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        /// Cross-validate the result along an independent route.
        #[arg(long)]
        verify: bool,
    },

    /// Validate a genus-one doubly pointed diagram and compute its invariants.
    Diagram { file: PathBuf },

    /// Invariant factors of H_1 presented by an intersection matrix.
    H1 { matrix: PathBuf },

    /// Replay the built-in worked examples, checking every expected value.
    Corpus,
}

/// A command failure, split by exit code: 2 for malformed input, 3 for
/// well-formed input outside the mathematical domain, 4 for an internal
/// invariant violation (a bug).
#[derive(Debug)]
pub enum Failure {
    Schema(String),
    Domain(String),
    Internal(String),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Schema(_) => 2,
            Failure::Domain(_) => 3,
            Failure::Internal(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Schema(m) | Failure::Domain(m) | Failure::Internal(m) => m,
        }
    }
}

impl From<knotfloer::Error> for Failure {
    fn from(e: knotfloer::Error) -> Self {
        use knotfloer::Error::*;
        let text = e.to_string();
        match e {
            InvalidInput(_) => Failure::Schema(text),
            InvalidComplex(_)
            | NotLSpaceKnotPolynomial(_)
            | ThinRealization(_)
            | InvalidDiagram(_)
            | ZeroSurgeryCoefficient
            | BelowLargeSurgeryThreshold { .. }
            | TruncationUnstable(_)
            | FreeSummandCount(_) => Failure::Domain(text),
            GradingInconsistent(_) | GradingModeMismatch | Internal(_) => Failure::Internal(text),
        }
    }
}

/// Print to stdout, ignoring a closed pipe (e.g. `knotfloer ... | head`).
fn emit(text: &str) {
    use std::io::Write;
    let _ = write!(std::io::stdout(), "{text}");
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let doc = match &cli.command {
        Command::Hfk { spec } => commands::hfk(spec, cli.truncation, cli.window_slack)?,
        Command::Surgery { spec, n, verify } => {
            commands::surgery(spec, *n, *verify, cli.truncation, cli.window_slack)?
        }
        Command::Diagram { file } => commands::diagram(file, cli.truncation, cli.window_slack)?,
        Command::H1 { matrix } => commands::h1(matrix)?,
        Command::Corpus => return corpus::run(),
    };
    if cli.json {
        let text = serde_json::to_string_pretty(&doc)
            .map_err(|e| Failure::Internal(format!("serializing result: {e}")))?;
        emit(&text);
        emit("\n");
    } else {
        emit(&render::render(&doc));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.exit_code())
        }
    }
}

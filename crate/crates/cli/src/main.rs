use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hnfdecomp::io::{ComponentMethod, MatrixDocument};

mod commands;

/// Process exit codes. Decompose uses 0/1 for decomposable/indecomposable.
pub mod exit {
    pub const OK: u8 = 0;
    pub const INDECOMPOSABLE: u8 = 1;
    pub const PARSE: u8 = 2;
    pub const IO: u8 = 3;
    pub const INVALID_INPUT: u8 = 4;
    pub const RANK_DEFICIENT: u8 = 5;
    pub const CHECK_FAILED: u8 = 6;
}

#[derive(Parser)]
#[command(name = "hnfdecomp", version, about = "Hermite normal forms and integer matrix decompositions")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Rref,
    ZeroPattern,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Hermite normal form H with A = P·H.
    Hnf {
        /// Matrix file; standard input when omitted or "-".
        input: Option<PathBuf>,
    },
    /// Split A into a direct sum of HNF blocks, if possible.
    Decompose {
        input: Option<PathBuf>,
        /// Verify the result and cross-check against brute-force oracles.
        #[arg(long)]
        check: bool,
        /// Drop all-zero rows before validating the input.
        #[arg(long)]
        strip_zero_rows: bool,
    },
    /// Connected components of a symmetric matrix's weighted graph.
    Components {
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
    },
    /// Run the built-in golden vectors and a seeded random sweep.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of random matrices in the sweep.
        #[arg(long, default_value_t = 500)]
        cases: usize,
    },
}

pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: u8,
}

impl Outcome {
    fn fail(code: u8, message: impl Into<String>) -> Self {
        Outcome {
            stdout: String::new(),
            stderr: message.into(),
            code,
        }
    }
}

fn read_input(path: Option<&PathBuf>) -> Result<MatrixDocument, Outcome> {
    let (source, text) = match path {
        Some(p) if p.as_os_str() != "-" => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| Outcome::fail(exit::IO, format!("error: cannot read {}: {e}", p.display())))?;
            (p.display().to_string(), text)
        }
        _ => {
            let mut text = String::new();
            io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| Outcome::fail(exit::IO, format!("error: cannot read standard input: {e}")))?;
            ("<stdin>".to_string(), text)
        }
    };
    MatrixDocument::parse(source.clone(), &text)
        .map_err(|e| Outcome::fail(exit::PARSE, format!("error: {source}: {e}")))
}

fn run(cli: Cli) -> Outcome {
    let format = cli.format;
    let loaded = match &cli.command {
        Command::Hnf { input } | Command::Decompose { input, .. } | Command::Components { input, .. } => {
            match read_input(input.as_ref()) {
                Ok(doc) => Some(doc),
                Err(o) => return o,
            }
        }
        Command::Selftest { .. } => None,
    };
    match cli.command {
        Command::Hnf { .. } => commands::hnf(&loaded.expect("read above").matrix, format),
        Command::Decompose {
            check,
            strip_zero_rows,
            ..
        } => commands::decompose(&loaded.expect("read above").matrix, format, check, strip_zero_rows),
        Command::Components { method, .. } => {
            let method = match method {
                Method::Rref => ComponentMethod::Rref,
                Method::ZeroPattern => ComponentMethod::ZeroPattern,
                Method::Both => ComponentMethod::Both,
            };
            commands::components(&loaded.expect("read above").matrix, format, method)
        }
        Command::Selftest { seed, cases } => commands::selftest(seed, cases, format),
    }
}

fn main() -> ExitCode {
    let outcome = run(Cli::parse());
    // Broken pipes are not worth a panic.
    let _ = io::stdout().write_all(outcome.stdout.as_bytes());
    if !outcome.stderr.is_empty() {
        let _ = writeln!(io::stderr(), "{}", outcome.stderr.trim_end());
    }
    ExitCode::from(outcome.code)
}

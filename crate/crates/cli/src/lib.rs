//! Command-line front end for `edgestate-core`.
//!
//! Exit codes: 0 success, 2 parse or usage error, 3 invalid state,
//! 4 method not applicable, 5 internal numerical or I/O failure.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use edgestate_core::optimize::SeeSawConfig;
use edgestate_core::Error;

pub mod commands;
pub mod matrix_file;
pub mod report;

pub use matrix_file::{MatrixFile, Metadata};
pub use report::AnalysisReport;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid state: {0}")]
    InvalidState(String),
    #[error("{0}")]
    Inapplicable(String),
    #[error("internal failure: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 2,
            CliError::InvalidState(_) => 3,
            CliError::Inapplicable(_) => 4,
            CliError::Internal(_) => 5,
        }
    }

    pub(crate) fn io(path: &Path, err: std::io::Error) -> Self {
        CliError::Internal(format!("cannot write {}: {err}", path.display()))
    }
}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        let msg = err.to_string();
        match err {
            Error::UnknownName(_)
            | Error::InvalidArgument(_)
            | Error::NotSquare { .. }
            | Error::DimensionMismatch { .. }
            | Error::UnsupportedShape(_) => CliError::Parse(msg),
            Error::NotHermitian { .. } | Error::NotPsd { .. } | Error::InvalidState(_) | Error::ZeroVector => {
                CliError::InvalidState(msg)
            }
            Error::NotPpt { .. } | Error::NoKernel { .. } | Error::NotApplicable(_) => CliError::Inapplicable(msg),
            Error::ComplexTrace { .. } => CliError::Internal(msg),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "edgestate", version, about = "Construct, certify and witness 3x3 PPT edge states")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Base seed of the multistart optimiser.
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, global = true, default_value_t = 200)]
    pub restarts: usize,
    #[arg(long, global = true, default_value_t = 500)]
    pub max_iter: usize,
    #[arg(long, global = true, default_value_t = 1e-12)]
    pub conv_tol: f64,
    /// Relative eigenvalue cut for ranks, ranges and kernels.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol_eig: f64,
    /// Absolute tolerance for positivity of states and partial transposes.
    #[arg(long, global = true, default_value_t = 1e-12)]
    pub tol_pos: f64,
    /// Shift of the shifted witnesses [analyze: default 1e-6; witness: only applied when given].
    #[arg(long, global = true)]
    pub shift: Option<f64>,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

impl GlobalArgs {
    pub fn config(&self) -> Result<SeeSawConfig, CliError> {
        let cfg = SeeSawConfig {
            restarts: self.restarts,
            max_iter: self.max_iter,
            conv_tol: self.conv_tol,
            seed: self.seed,
        };
        cfg.validate()?;
        for (flag, v) in [("--tol-eig", self.tol_eig), ("--tol-pos", self.tol_pos)] {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(CliError::Parse(format!("{flag} must be a finite non-negative number, got {v}")));
            }
        }
        Ok(cfg)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Kernel,
    Realign,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the built-in states with their (rank, PT-rank) labels.
    Catalog,
    /// Full analysis report of a catalog state or matrix file.
    Analyze { input: String },
    /// Build an entanglement witness and write it as a matrix file.
    Witness {
        input: String,
        #[arg(long, value_enum)]
        method: MethodArg,
    },
    /// Heuristic edge certificate from the range criterion.
    CertifyEdge { input: String },
    /// Minimise a witness file over Schmidt-rank-two states.
    Schmidt2 { witness_file: PathBuf },
    /// Write a catalog state as a matrix file.
    Export { name: String },
}

/// Runs one command. Primary output goes to `--out` or `stdout`; short
/// human-readable notes go to `stderr`.
pub fn run(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), CliError> {
    let g = &cli.global;
    let emit = |text: String, stdout: &mut dyn Write| -> Result<(), CliError> {
        match &g.out {
            Some(path) => std::fs::write(path, text).map_err(|e| CliError::io(path, e)),
            None => stdout
                .write_all(text.as_bytes())
                .map_err(|e| CliError::Internal(format!("cannot write to stdout: {e}"))),
        }
    };
    match &cli.command {
        Command::Catalog => {
            let text = commands::catalog();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| CliError::Internal(format!("cannot write to stdout: {e}")))
        }
        Command::Analyze { input } => emit(to_json(&commands::analyze(input, g)?), stdout),
        Command::CertifyEdge { input } => emit(to_json(&commands::certify_edge(input, g)?), stdout),
        Command::Schmidt2 { witness_file } => emit(to_json(&commands::schmidt2(witness_file, g)?), stdout),
        Command::Export { name } => emit(commands::export(name)?.to_json(), stdout),
        Command::Witness { input, method } => {
            let (file, summary) = commands::witness(input, *method, g)?;
            // keep stdout machine-readable when the file goes there
            let notes: &mut dyn Write = if g.out.is_some() { stdout } else { stderr };
            notes
                .write_all(summary.as_bytes())
                .map_err(|e| CliError::Internal(format!("cannot write summary: {e}")))?;
            match &g.out {
                Some(path) => file.write(path),
                None => stdout
                    .write_all(file.to_json().as_bytes())
                    .map_err(|e| CliError::Internal(format!("cannot write to stdout: {e}"))),
            }
        }
    }
}

pub(crate) fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

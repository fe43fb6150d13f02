//! Command-line front end: argument definitions, dispatch and rendering.
//!
//! [`render`] produces the complete output text before anything is written,
//! so [`run`] either writes a whole file or nothing.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

mod commands;
pub mod output;

pub use commands::{parse_level, DEFAULT_LEVELS, LEVEL_CSV_HEADER};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Lattice(#[from] latnp::LatticeError),
    #[error("{0}")]
    Io(String),
    #[error("{path}: {message}")]
    Input { path: String, message: String },
    #[error("{0}")]
    Usage(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PeMethod {
    Analytic,
    Area,
    Mc,
}

#[derive(Debug, Parser)]
#[command(
    name = "latnp",
    version,
    about = "Closest lattice points, nearest-plane error probability and protocol simulation"
)]
pub struct Cli {
    /// RNG seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Output format (defaults to csv for levelcurves, json otherwise).
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Lagrange-Gauss reduction and canonical (a, b) of a 2D basis.
    Reduce { matrix: PathBuf },
    /// Nearest-plane point of x, compared with the exact closest point.
    Babai {
        matrix: PathBuf,
        /// Target, comma separated.
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        x: Vec<f64>,
    },
    /// Exact closest lattice point of x, compared with the nearest-plane point.
    Cvp {
        matrix: PathBuf,
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        x: Vec<f64>,
    },
    /// Error probability of the nearest-plane partition of the basis as given.
    Perror {
        matrix: PathBuf,
        #[arg(long, value_enum, default_value_t = PeMethod::Area)]
        method: PeMethod,
        /// Monte-Carlo sample count.
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
    },
    /// Points (a, b) on the level curves F(a, b) = k.
    Levelcurves {
        /// Levels, comma separated; fractions such as 1/12 are accepted.
        #[arg(long, value_delimiter = ',', value_parser = parse_level)]
        k: Option<Vec<f64>>,
        /// Grid points along a in [0, 1/2].
        #[arg(long, default_value_t = 101)]
        grid: usize,
        /// Monte-Carlo samples per point (0 leaves pe_mc empty).
        #[arg(long, default_value_t = 0)]
        samples: u64,
    },
    /// Repeated protocol runs from a scenario file.
    Simulate { scenario: PathBuf },
    /// Centralized bound and broadcast rate for a basis and source model.
    Rates {
        matrix: PathBuf,
        #[arg(long)]
        alpha: f64,
        /// uniform:LO:HI or gaussian:MEAN:SIGMA; one value applies to every node.
        #[arg(long = "source", required = true, allow_hyphen_values = true)]
        sources: Vec<String>,
    },
}

/// The full output text of a command.
pub fn render(cli: &Cli) -> Result<String, CliError> {
    commands::dispatch(cli)
}

/// Renders, then writes to `--out` atomically or to stdout.
pub fn run(cli: &Cli) -> Result<(), CliError> {
    let text = render(cli)?;
    match &cli.out {
        Some(path) => output::write_atomic(path, &text),
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| CliError::Io(format!("stdout: {e}")))
        }
    }
}

//! Command-line front end for `rtoa`.
//!
//! Exit status: 0 on success, 1 for invalid input or a failed verification,
//! 2 when a numerical method did not converge.

pub mod commands;
pub mod config;
pub mod output;
pub mod states;

use std::ffi::OsString;
use std::fmt;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use config::{FileConfig, Format, Overrides, RunConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_CONVERGENCE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "rtoa",
    version,
    about = "Relativistic time-of-arrival operator toolkit"
)]
pub struct Cli {
    /// Flat JSON config file; command-line flags take precedence.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Reduced Planck constant
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub hbar: Option<f64>,
    /// Speed of light.
    #[arg(long = "c", global = true, allow_hyphen_values = true)]
    pub c: Option<f64>,
    /// Rest mass
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub m0: Option<f64>,
    /// Output file (stdout when absent). Written atomically.
    #[arg(short, long, global = true, value_name = "FILE")]
    pub output: Option<PathBuf>,
    #[arg(long, visible_alias = "out", global = true, value_parser = parse_format)]
    pub format: Option<Format>,
    /// Also write a gnuplot script next to the output file.
    #[arg(long, global = true)]
    pub plot_script: bool,
    #[command(subcommand)]
    pub command: Command,
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse()
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve for the conjugate operator exactly and print the commutator residual.
    VerifyAlgebra(commands::algebra::Args),
    /// Run the numerical checks of the momentum-space operator (JSON report).
    VerifySpectral(commands::spectral::Args),
    /// Sample a momentum-space eigenfunction.
    Eigenfunction(commands::eigen::Args),
    /// Space-time density of a position-space eigenfunction.
    DensityGrid(commands::density::Args),
    /// Arrival-time distribution of a Gaussian wavepacket.
    ToaDist(commands::toa::Args),
    /// Non-relativistic limits of the operator and its eigenfunctions.
    Limits(commands::limits::Args),
}

#[derive(Debug)]
pub enum Failure {
    Validation(String),
    Numerical(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Validation(_) => EXIT_VALIDATION,
            Failure::Numerical(_) => EXIT_CONVERGENCE,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Validation(m) | Failure::Numerical(m) => f.write_str(m),
        }
    }
}

impl From<rtoa::Error> for Failure {
    fn from(e: rtoa::Error) -> Self {
        if e.is_numerical() {
            Failure::Numerical(e.to_string())
        } else {
            Failure::Validation(e.to_string())
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Validation(format!("write failed: {e}"))
    }
}

fn threads_from_env() -> Result<usize, Failure> {
    match std::env::var("RTOA_THREADS") {
        Ok(v) => v.trim().parse().map_err(|_| {
            Failure::Validation(format!(
                "RTOA_THREADS must be a non-negative integer, got {v:?}"
            ))
        }),
        Err(_) => Ok(0),
    }
}

/// Parses `args` (including the program name) and runs one subcommand.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_VALIDATION
            } else {
                EXIT_OK
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("rtoa: error: {f}");
            f.exit_code()
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32, Failure> {
    rtoa::exec::configure_threads(threads_from_env()?);
    let file = cli.config.as_deref().map(FileConfig::load).transpose()?;
    let epsilon = match &cli.command {
        Command::DensityGrid(a) => a.epsilon,
        _ => None,
    };
    let overrides = Overrides {
        hbar: cli.hbar,
        c: cli.c,
        m0: cli.m0,
        epsilon,
        path: cli.output.clone(),
        format: cli.format,
        emit_plot_script: cli.plot_script,
    };
    let cfg = RunConfig::resolve(file.as_ref(), &overrides)?;
    eprintln!("rtoa: effective config {}", cfg.to_json());
    match &cli.command {
        Command::VerifyAlgebra(a) => commands::algebra::run(a, &cfg),
        Command::VerifySpectral(a) => commands::spectral::run(a, &cfg),
        Command::Eigenfunction(a) => commands::eigen::run(a, &cfg),
        Command::DensityGrid(a) => commands::density::run(a, &cfg),
        Command::ToaDist(a) => commands::toa::run(a, &cfg),
        Command::Limits(a) => commands::limits::run(a, &cfg),
    }
}

//! Command-line front end for `mdsrel`.
//!
//! Exit codes: 0 success, 2 configuration or usage error, 3 numeric error,
//! 4 capacity error.

pub mod commands;
pub mod config;
pub mod output;
pub mod plotscript;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use config::{Quantity, RunConfig};

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Numeric(String),
    Capacity(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numeric(_) => 3,
            CliError::Capacity(_) => 4,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "configuration error: {m}"),
            CliError::Numeric(m) => write!(f, "numeric error: {m}"),
            CliError::Capacity(m) => write!(f, "capacity error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<mdsrel::Error> for CliError {
    fn from(e: mdsrel::Error) -> Self {
        match e {
            mdsrel::Error::Capacity { .. } => CliError::Capacity(e.to_string()),
            _ => CliError::Numeric(e.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "mdsrel", version, about = "Reliability curves for MDS-coded storage arrays")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one quantity over the configured age grid.
    Curve(CurveArgs),
    /// Mean time to failure and annualized failure rate of the array.
    Mttf(CommonArgs),
    /// Finite-n hazard per component against its large-n limit, per rate.
    Asymptotic(AsymptoticArgs),
    /// Monte Carlo survival estimate next to the closed form.
    Simulate(SimulateArgs),
    /// Write a matplotlib script that plots emitted CSV files.
    Plotscript(PlotArgs),
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Run configuration (TOML).
    #[arg(long)]
    pub config: PathBuf,
    /// Output CSV path; overrides `output.path`. Defaults to stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CurveArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Overrides `output.quantity`; defaults to component_hazard.
    #[arg(long, value_enum)]
    pub quantity: Option<Quantity>,
}

#[derive(Debug, Args)]
pub struct AsymptoticArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Overrides `asymptotic.q`.
    #[arg(long)]
    pub q: Option<f64>,
    /// Comma-separated code rates; overrides `asymptotic.rates`.
    #[arg(long, value_delimiter = ',')]
    pub rates: Option<Vec<f64>>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Overrides `simulation.trials`.
    #[arg(long)]
    pub trials: Option<u64>,
    /// Overrides `simulation.seed`.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Run every trial on the calling thread.
    #[arg(long)]
    pub serial: bool,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    /// CSV files written by `curve`, `asymptotic` or `simulate`.
    #[arg(required = true)]
    pub csv: Vec<PathBuf>,
    /// Script path.
    #[arg(long)]
    pub out: PathBuf,
    /// Log-log axes; overrides `output.log_log` from `--config`.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub log_log: Option<bool>,
    /// Optional run configuration supplying `output.log_log`.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Curve(args) => commands::curve(&args),
        Command::Mttf(args) => commands::mttf(&args),
        Command::Asymptotic(args) => commands::asymptotic(&args),
        Command::Simulate(args) => commands::simulate(&args),
        Command::Plotscript(args) => plotscript::write(&args),
    }
}

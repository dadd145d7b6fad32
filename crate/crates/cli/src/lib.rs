//! `etl`: batch front-end for `etl-core`.
//!
//! Exit codes: `0` success, `1` verification failure, `2` configuration or
//! argument error, `3` numerical failure.

// NaN-rejecting guards are written as `!(x > 0.0)`.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use etl_core::fixtures::FixtureError;
use etl_core::{Convention, OracleError, ScenarioError, StructureError, SurfaceError};
use thiserror::Error;

mod commands;
pub mod output;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "etl",
    version,
    about = "Einstein-type structures on rotational hypersurfaces"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Scenario file (JSON).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory; without it results go to stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Verification tolerance (`verify`, `example`) or oracle tolerance (`oracle`).
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Number of grid points along the profile.
    #[arg(long, global = true)]
    pub grid: Option<usize>,
    /// Tau convention(s) that enter the verdict; when omitted both are
    /// reported and neither is gated.
    #[arg(long, global = true, value_enum)]
    pub convention: Option<ConventionArg>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Emit λ(s), μ(s), u(s) from the solver as CSV.
    Solve,
    /// Residual report as JSON; exit 0 iff every gated equation passes.
    Verify,
    /// Closed forms against finite differences as JSON.
    Oracle,
    /// Run a built-in fixture end to end.
    Example {
        name: Option<String>,
        /// List fixture names and default parameters.
        #[arg(long)]
        list: bool,
    },
    /// Surface mesh CSV `s,v1[,v2…],x0,…,xn`.
    Mesh,
    /// Hypothesis margins CSV.
    Margins,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConventionArg {
    #[value(name = "A")]
    A,
    #[value(name = "B")]
    B,
    #[value(name = "both")]
    Both,
}

impl ConventionArg {
    pub fn gated(arg: Option<ConventionArg>) -> Vec<Convention> {
        match arg {
            None => Vec::new(),
            Some(ConventionArg::A) => vec![Convention::A],
            Some(ConventionArg::B) => vec![Convention::B],
            Some(ConventionArg::Both) => Convention::BOTH.to_vec(),
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error at `{key}`: {message}")]
    Config { key: String, message: String },
    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl CliError {
    pub fn config(key: &str, message: impl ToString) -> Self {
        CliError::Config {
            key: key.to_string(),
            message: message.to_string(),
        }
    }

    pub fn io(key: &str, err: std::io::Error) -> Self {
        CliError::config(key, err)
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config { .. } => EXIT_CONFIG,
            CliError::Numerical(_) => EXIT_NUMERICAL,
        }
    }
}

impl From<ScenarioError> for CliError {
    fn from(e: ScenarioError) -> Self {
        match e {
            ScenarioError::Config { key, message } => CliError::Config { key, message },
            other => CliError::Numerical(other.to_string()),
        }
    }
}

impl From<StructureError> for CliError {
    fn from(e: StructureError) -> Self {
        ScenarioError::from(e).into()
    }
}

impl From<SurfaceError> for CliError {
    fn from(e: SurfaceError) -> Self {
        CliError::Numerical(e.to_string())
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        CliError::Numerical(e.to_string())
    }
}

impl From<FixtureError> for CliError {
    fn from(e: FixtureError) -> Self {
        match e {
            FixtureError::Unknown(name) => {
                CliError::config("example", format!("unknown fixture `{name}`"))
            }
            FixtureError::Param { name, .. } => CliError::config(name, e),
            FixtureError::Scenario(s) => s.into(),
            FixtureError::Structure(s) => s.into(),
        }
    }
}

/// Cap the global thread pool at `ETL_THREADS` when set.
fn configure_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var("ETL_THREADS") else {
        return Ok(());
    };
    let n: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| {
            CliError::config(
                "ETL_THREADS",
                format!("expected a positive integer, got `{value}`"),
            )
        })?;
    // A pool that already exists (tests running in-process) is left as is.
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global();
    Ok(())
}

pub fn run(cli: &Cli) -> Result<i32, CliError> {
    configure_threads()?;
    if let Some(t) = cli.tol {
        if !(t > 0.0) {
            return Err(CliError::config(
                "--tol",
                format!("must be positive, got {t}"),
            ));
        }
    }
    match &cli.command {
        Command::Solve => commands::solve(cli),
        Command::Verify => commands::verify(cli),
        Command::Oracle => commands::oracle(cli),
        Command::Example { name, list } => commands::example(cli, name.as_deref(), *list),
        Command::Mesh => commands::mesh(cli),
        Command::Margins => commands::margins(cli),
    }
}

/// Run and map errors to exit codes, reporting them on stderr.
pub fn main_with(cli: &Cli) -> i32 {
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("etl: {e}");
            e.exit_code()
        }
    }
}

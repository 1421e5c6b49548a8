//! Command-line front end. Exit codes: 0 success, 2 invalid parameters,
//! 3 a numerical invariant of the oracle failed, 1 anything else (I/O).
//! Thread count follows `RAYON_NUM_THREADS`.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::lightcone::{Method, Which};

pub use commands::{dispatch, CliError};

#[derive(Debug, Parser)]
#[command(name = "lrbound", version, about = "Iterated Lieb-Robinson bounds for power-law interactions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(tag = "subcommand", rename_all = "kebab-case")]
pub enum Command {
    /// Derive the iterated bound and write it as JSON.
    Derive(DeriveArgs),
    /// Light-cone exponents over an alpha grid.
    Lightcone(LightconeArgs),
    /// Measure a commutator front exactly and fit the bound against it.
    Verify(VerifyArgs),
    /// Compare evolutions under H and H + dH against the Duhamel estimate.
    Perturb(PerturbArgs),
    /// Fit the constant of the stretched incomplete-gamma tail inequality.
    LemmaGamma(LemmaGammaArgs),
    /// Fit the constant of the lattice sum versus integral inequality.
    LemmaSum(LemmaSumArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MethodArg {
    ThisWork,
    FossFeig,
    Matsuta,
    All,
}

impl MethodArg {
    pub fn methods(self) -> Vec<Method> {
        match self {
            MethodArg::ThisWork => vec![Method::ThisWork],
            MethodArg::FossFeig => vec![Method::FossFeig],
            MethodArg::Matsuta => vec![Method::Matsuta],
            MethodArg::All => Method::ALL.to_vec(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Model {
    /// Power-law Ising chain with a unit transverse field.
    Ising,
    /// `Z Z` on two sites, observable `X` on site 0, probe `X` on site 1.
    TwoSite,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LatticeKind {
    Chain,
    Square,
}

#[derive(Debug, Args, Serialize)]
pub struct DeriveArgs {
    #[arg(long)]
    pub alpha: f64,
    #[arg(long, default_value_t = 1)]
    pub dim: u32,
    #[arg(long)]
    pub sigma: f64,
    #[arg(long)]
    pub iterations: usize,
    #[arg(long, default_value_t = 1)]
    pub x_size: u32,
    #[arg(long = "j", default_value_t = 1.0)]
    pub j_const: f64,
    #[arg(long, default_value_t = 1.0)]
    pub c0: f64,
    /// Accept any sigma in (d/alpha, 1) instead of ((d+1)/(alpha+1), 1).
    #[arg(long)]
    pub allow_loose_sigma: bool,
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct LightconeArgs {
    #[arg(long, default_value_t = 1)]
    pub dim: u32,
    #[arg(long)]
    pub alpha_min: f64,
    #[arg(long)]
    pub alpha_max: f64,
    #[arg(long, default_value_t = 100)]
    pub steps: usize,
    #[arg(long, value_enum, default_value_t = Which::Lc2)]
    pub which: Which,
    #[arg(long, value_enum, default_value_t = MethodArg::All)]
    pub method: MethodArg,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Model::Ising)]
    pub model: Model,
    #[arg(long, default_value_t = 8)]
    pub sites: usize,
    #[arg(long, default_value_t = 2.0)]
    pub alpha: f64,
    #[arg(long, default_value_t = 2.0)]
    pub tmax: f64,
    /// Number of time points, `t = 0` included.
    #[arg(long, default_value_t = 21)]
    pub steps: usize,
    /// Bound JSON from `derive`; derived from the model's fitted constants when absent.
    #[arg(long)]
    pub bound_file: Option<PathBuf>,
    #[arg(long, default_value_t = 0.9)]
    pub sigma: f64,
    /// Iterations for the fresh bound; defaults to n* + 2.
    #[arg(long)]
    pub iterations: Option<usize>,
    /// Also write the front as CSV, with a `.meta.json` sidecar.
    #[arg(long)]
    pub front_out: Option<PathBuf>,
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct PerturbArgs {
    #[arg(long, default_value_t = 8)]
    pub sites: usize,
    #[arg(long, default_value_t = 2.0)]
    pub alpha: f64,
    #[arg(long, default_value_t = 2.0)]
    pub tmax: f64,
    #[arg(long, default_value_t = 11)]
    pub steps: usize,
    /// Site carrying the observable `Z`.
    #[arg(long, default_value_t = 0)]
    pub site: usize,
    /// No perturbation term may come closer than this to the observable.
    #[arg(long, default_value_t = 2.0)]
    pub r_min: f64,
    /// Without `--delta-file`, dH is this multiple of every term of H at distance >= r_min.
    #[arg(long, default_value_t = 0.1)]
    pub scale: f64,
    /// JSON array of terms `{support, ops, coeff}` forming dH.
    #[arg(long)]
    pub delta_file: Option<PathBuf>,
    #[arg(long, default_value_t = 0.9)]
    pub sigma: f64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct LemmaGammaArgs {
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_values_t = vec![-1.0, 0.0, 1.0, 2.0])]
    pub mu: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_values_t = vec![0.1, 0.5, 1.0])]
    pub nu: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_values_t = vec![0.5, 1.0, 2.0, 5.0, 10.0])]
    pub rho: Vec<f64>,
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct LemmaSumArgs {
    #[arg(long, value_enum, default_value_t = LatticeKind::Chain)]
    pub lattice: LatticeKind,
    /// Chain length or square side.
    #[arg(long, default_value_t = 101)]
    pub size: usize,
    /// Decay `r^{-p}`; comma-separated list allowed.
    #[arg(long, value_delimiter = ',', default_values_t = vec![3.0, 4.0])]
    pub decay_exponent: Vec<f64>,
    #[arg(long, default_value_t = 50.0)]
    pub radius: f64,
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

/// Parses `std::env::args` and runs the subcommand.
pub fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("lrbound: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

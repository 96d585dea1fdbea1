//! `wcpswf`: command-line front end for the weighted CPSWF library.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "wcpswf", version, about = "Clifford Gegenbauer polynomials and weighted Clifford prolate spheroidal wave functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sample one Clifford Gegenbauer polynomial.
    Cgp(CgpArgs),
    /// Solve for weighted CPSWF eigenpairs.
    Cpswf(CpswfArgs),
    /// Gram matrix of a computed CPSWF family.
    Gram(GramArgs),
    /// Fit G ψ ≈ μ ψ for one CPSWF and report the residual.
    TransformCheck(TransformArgs),
    /// Plot-ready samples for the standard figure parameter sets.
    FigureData(FigureArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParityArg {
    Even,
    Odd,
    Both,
}

#[derive(Args, Debug)]
pub struct Common {
    /// Clifford index k
    #[arg(long, default_value_t = 0)]
    pub k: u32,
    /// dimension m
    #[arg(long, default_value_t = 2)]
    pub m: u32,
    /// weight exponent, must exceed -1
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub alpha: f64,
    /// output file (stdout when absent)
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Args, Debug)]
pub struct CgpArgs {
    /// polynomial degree n
    #[arg(long = "n", visible_alias = "N")]
    pub n: usize,
    #[command(flatten)]
    pub common: Common,
    /// points per axis of the sampling grid
    #[arg(long, default_value_t = 21)]
    pub grid: usize,
    /// emit the radial profile (t, value) instead of the planar grid
    #[arg(long)]
    pub radial: bool,
    /// scale to unit norm
    #[arg(long)]
    pub normalized: bool,
}

#[derive(Args, Debug)]
pub struct CpswfArgs {
    #[command(flatten)]
    pub common: Common,
    /// bandwidth
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub c: f64,
    /// number of eigenpairs per parity
    #[arg(long, default_value_t = 6)]
    pub count: usize,
    /// only emit the pair with this index N
    #[arg(long = "n", visible_alias = "N")]
    pub n: Option<usize>,
    #[arg(long, value_enum, default_value_t = ParityArg::Both)]
    pub parity: ParityArg,
    /// tolerance on the trailing expansion coefficients
    #[arg(long, default_value_t = wcpswf::cpswf::DEFAULT_TOL)]
    pub tol: f64,
    /// points of the radial profile in CSV output
    #[arg(long, default_value_t = 21)]
    pub grid: usize,
    /// append a Gram and residual report
    #[arg(long)]
    pub verify: bool,
}

#[derive(Args, Debug)]
pub struct GramArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub c: f64,
    #[arg(long, default_value_t = 6)]
    pub count: usize,
    #[arg(long, default_value_t = wcpswf::cpswf::DEFAULT_TOL)]
    pub tol: f64,
    /// angular points of the planar rule
    #[arg(long, default_value_t = 16)]
    pub grid: usize,
    /// integrate the radial profiles only, even in the plane
    #[arg(long)]
    pub radial: bool,
}

#[derive(Args, Debug)]
pub struct TransformArgs {
    #[arg(long = "n", visible_alias = "N", default_value_t = 0)]
    pub n: usize,
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub c: f64,
    #[arg(long, value_enum, default_value_t = ParityArg::Even)]
    pub parity: ParityArg,
    #[arg(long, default_value_t = wcpswf::cpswf::DEFAULT_TOL)]
    pub tol: f64,
    /// radial points of the fitting grid
    #[arg(long, default_value_t = 24)]
    pub grid: usize,
    /// angular points of the fitting grid
    #[arg(long, default_value_t = 32)]
    pub angular: usize,
}

#[derive(Args, Debug)]
pub struct FigureArgs {
    /// points per axis
    #[arg(long, default_value_t = 41)]
    pub grid: usize,
    /// restrict to one figure (1 to 7)
    #[arg(long)]
    pub figure: Option<u8>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Cgp(a) => commands::cgp(&a),
        Command::Cpswf(a) => commands::cpswf(&a),
        Command::Gram(a) => commands::gram(&a),
        Command::TransformCheck(a) => commands::transform_check(&a),
        Command::FigureData(a) => commands::figure_data(&a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

//! `bfamily`: threshold computations and simulations for the periodic b-family.
//!
//! Exit codes: 0 success, 1 usage, 2 domain error, 3 internal error.

mod commands;
mod output;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Environment variable naming the default artifact directory.
pub const OUT_DIR_ENV: &str = "BFAMILY_OUT_DIR";

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn usage(msg: impl fmt::Display) -> Self {
        Self { code: 1, message: msg.to_string() }
    }

    pub fn domain(msg: impl fmt::Display) -> Self {
        Self { code: 2, message: msg.to_string() }
    }

    pub fn internal(msg: impl fmt::Display) -> Self {
        Self { code: 3, message: msg.to_string() }
    }
}

impl From<bfamily_core::Error> for CliError {
    fn from(e: bfamily_core::Error) -> Self {
        use bfamily_core::Error as E;
        match e {
            E::BetaOutOfRange { .. }
            | E::BOutOfRange { .. }
            | E::DegreeSingular { .. }
            | E::ArgumentOutOfRange { .. }
            | E::GridTooSmall { .. }
            | E::GridNotPowerOfTwo { .. }
            | E::TooManyModes { .. }
            | E::RoughInitialData { .. }
            | E::InvalidConfig(_) => CliError::domain(e),
            E::NoConvergence { .. }
            | E::DivisionNearZero { .. }
            | E::NoRealRoot { .. }
            | E::LinearSolveFailure { .. }
            | E::NotCoercive { .. } => CliError::internal(e),
        }
    }
}

/// `min:max:steps`, endpoints included.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct SweepRange {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl std::str::FromStr for SweepRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let [min, max, steps] = parts.as_slice() else {
            return Err(format!("expected min:max:steps, got '{s}'"));
        };
        let min: f64 = min.parse().map_err(|_| format!("bad sweep minimum '{min}'"))?;
        let max: f64 = max.parse().map_err(|_| format!("bad sweep maximum '{max}'"))?;
        let steps: usize = steps.parse().map_err(|_| format!("bad sweep step count '{steps}'"))?;
        if steps == 0 || !(min <= max) {
            return Err(format!("sweep needs min <= max and steps >= 1, got '{s}'"));
        }
        Ok(SweepRange { min, max, steps })
    }
}

#[derive(Debug, Parser)]
#[command(name = "bfamily", version, about = "Blow-up threshold computations for the periodic b-family")]
struct Cli {
    /// Directory for CSV/JSON artifacts and run manifests.
    #[arg(long, global = true, env = OUT_DIR_ENV)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Variational constant J(b, beta).
    J(JArgs),
    /// Threshold beta_b with the analytic estimates, for one b or a sweep.
    BetaB(BetaBArgs),
    /// Analytic upper bounds on beta_b and their validity thresholds.
    Estimates(RangeArgs),
    /// Pseudo-spectral run with blow-up detection.
    Simulate(SimulateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum JMethodArg {
    Auto,
    Bvp,
    Direct,
}

#[derive(Debug, Args, serde::Serialize)]
pub struct JArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub b: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub beta: f64,
    /// Grid size (even, >= 64).
    #[arg(long, default_value_t = bfamily_core::variational::DEFAULT_GRID)]
    pub grid: usize,
    #[arg(long, value_enum, default_value_t = JMethodArg::Auto)]
    pub method: JMethodArg,
}

#[derive(Debug, Args, serde::Serialize)]
#[group(required = true, multiple = false)]
pub struct Range {
    #[arg(long, allow_negative_numbers = true)]
    pub b: Option<f64>,
    /// `min:max:steps`, endpoints included.
    #[arg(long)]
    pub sweep: Option<SweepRange>,
}

impl Range {
    pub fn sweep_range(&self) -> SweepRange {
        match (self.b, self.sweep) {
            (_, Some(s)) => s,
            (Some(b), None) => SweepRange { min: b, max: b, steps: 1 },
            (None, None) => unreachable!("clap enforces one of --b/--sweep"),
        }
    }
}

#[derive(Debug, Args, serde::Serialize)]
pub struct BetaBArgs {
    #[command(flatten)]
    pub range: Range,
    #[arg(long, default_value_t = bfamily_core::beta_b::DEFAULT_TOL)]
    pub tol: f64,
    #[arg(long, default_value_t = bfamily_core::beta_b::DEFAULT_SCAN_POINTS)]
    pub scan_points: usize,
}

#[derive(Debug, Args, serde::Serialize)]
pub struct RangeArgs {
    #[command(flatten)]
    pub range: Range,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InitialData {
    /// u0 = amp
    Const,
    /// u0 = amp cos(2 pi x)
    Cos,
    /// u0 = -amp sin(2 pi x)
    Oddsine,
    /// u0 = mean + sum cos_k cos(2 pi k x) + sin_k sin(2 pi k x)
    Fourier,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BetaSource {
    /// beta_b from the variational problem (tol 1e-4).
    Numeric,
    /// Estimate-3 upper bound (fewer criterion points).
    Est3,
    /// Skip the criterion check.
    None,
}

#[derive(Debug, Args, serde::Serialize)]
pub struct SimulateArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub b: f64,
    #[arg(long, value_enum)]
    pub ic: InitialData,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub amp: f64,
    /// Mean for `--ic fourier`.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub mean: f64,
    /// Cosine coefficients k = 1, 2, ... for `--ic fourier`.
    #[arg(long = "cos", value_delimiter = ',', allow_negative_numbers = true)]
    pub cos: Vec<f64>,
    /// Sine coefficients k = 1, 2, ... for `--ic fourier`.
    #[arg(long = "sin", value_delimiter = ',', allow_negative_numbers = true)]
    pub sin: Vec<f64>,
    #[arg(long, default_value_t = 1024)]
    pub n: usize,
    #[arg(long, default_value_t = 1.0)]
    pub t_max: f64,
    #[arg(long, default_value_t = bfamily_core::pde::DEFAULT_CFL)]
    pub cfl: f64,
    /// Breaking level as a multiple of max(|min u0_x|, 1).
    #[arg(long, default_value_t = bfamily_core::pde::DEFAULT_SLOPE_FACTOR, conflicts_with = "slope_threshold")]
    pub slope_factor: f64,
    /// Absolute breaking level L (min u_x < -L).
    #[arg(long)]
    pub slope_threshold: Option<f64>,
    #[arg(long)]
    pub no_dealias: bool,
    #[arg(long, value_enum, default_value_t = BetaSource::Numeric)]
    pub beta_source: BetaSource,
}

fn run() -> Result<(), CliError> {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return Ok(());
            }
            let text = e.to_string();
            return Err(CliError::usage(text.trim_end().strip_prefix("error: ").unwrap_or(text.trim_end())));
        }
    };
    let out = cli.out.as_deref();
    match &cli.command {
        Command::J(a) => commands::cmd_j(a, out),
        Command::BetaB(a) => commands::cmd_beta_b(a, out),
        Command::Estimates(a) => commands::cmd_estimates(a, out),
        Command::Simulate(a) => commands::cmd_simulate(a, out),
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

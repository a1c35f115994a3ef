//! Command-line grammar. Physical inputs are validated while parsing.

use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use twolevel::oracle::{Method, ValidationSuite};
use twolevel::surface::{ExportFormat, ProbabilityKind};

#[derive(Parser, Debug)]
#[command(name = "twolevel", version, about = "Two-level atom probability, lifetime and validation toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Atomic constants of a preset: ω₀, d, t_S, γ_S, fine splitting.
    Constants(ConstantsArgs),
    /// Probability surface over (τ, Δω) or the dimensionless (X, Y) plane.
    Surface(SurfaceArgs),
    /// Fixed-time spectral slice P(Δω), optionally with unit-probability peaks.
    Slice(SliceArgs),
    /// Lifetime constants derived from the spontaneous emission time.
    Lifetime(LifetimeArgs),
    /// Closed forms against integrated amplitude equations.
    Validate(ValidateArgs),
}

fn parse_f64(s: &str) -> Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|e| format!("'{s}' is not a number: {e}"))?;
    if !v.is_finite() {
        return Err(format!("'{s}' is not finite"));
    }
    Ok(v)
}

fn parse_positive(s: &str) -> Result<f64, String> {
    let v = parse_f64(s)?;
    if v <= 0.0 {
        return Err(format!("{v} must be positive"));
    }
    Ok(v)
}

fn parse_non_negative(s: &str) -> Result<f64, String> {
    let v = parse_f64(s)?;
    if v < 0.0 {
        return Err(format!("{v} must be non-negative"));
    }
    Ok(v)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum KindArg {
    /// Monochromatic drive.
    P1,
    /// Symmetric bichromatic drive.
    P2,
}

impl From<KindArg> for ProbabilityKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::P1 => ProbabilityKind::P1,
            KindArg::P2 => ProbabilityKind::P2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SurfaceFormat {
    Csv,
    Json,
    Matrix,
}

impl From<SurfaceFormat> for ExportFormat {
    fn from(f: SurfaceFormat) -> Self {
        match f {
            SurfaceFormat::Csv => ExportFormat::Csv,
            SurfaceFormat::Json => ExportFormat::Json,
            SurfaceFormat::Matrix => ExportFormat::Matrix,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TableFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SuiteArg {
    Rwa,
    Bichromatic,
    Damped,
}

impl From<SuiteArg> for ValidationSuite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Rwa => ValidationSuite::Rwa,
            SuiteArg::Bichromatic => ValidationSuite::Bichromatic,
            SuiteArg::Damped => ValidationSuite::Damped,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MethodArg {
    /// Dormand–Prince 5(4).
    Dopri5,
    /// Dormand–Prince 8(5,3).
    Dop853,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Dopri5 => Method::DormandPrince54,
            MethodArg::Dop853 => Method::DormandPrince853,
        }
    }
}

#[derive(Args, Debug, Serialize)]
pub struct PresetArgs {
    /// Atom preset name (case-insensitive).
    #[arg(long, default_value = "lithium")]
    pub atom: String,
    /// Extra preset file (`key = value` records); its entries shadow built-ins.
    #[arg(long, value_name = "PATH")]
    pub presets: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct ConstantsArgs {
    #[command(flatten)]
    pub preset: PresetArgs,
    /// Also report intensity and Rabi frequency for this field amplitude.
    #[arg(long, value_name = "V_PER_M", value_parser = parse_non_negative)]
    pub field_v_per_m: Option<f64>,
    /// Also report field amplitude and Rabi frequency for this intensity.
    #[arg(long, value_name = "W_PER_M2", value_parser = parse_non_negative)]
    pub intensity_w_per_m2: Option<f64>,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    pub format: ReportFormat,
    /// Output file; standard output when absent.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct SurfaceArgs {
    #[arg(long, value_enum)]
    pub kind: KindArg,
    /// Use X = τ·Ω and Y = Δω/Ω axes; no drive flags are needed.
    #[arg(long)]
    pub dimensionless: bool,
    /// Dimensionless axis bounds (X = τ·Ω, Y = Δω/Ω). Defaults: X∈[0, 4π], Y∈[−4, 4].
    #[arg(long, value_parser = parse_f64, requires = "dimensionless")]
    pub x_min: Option<f64>,
    #[arg(long, value_parser = parse_f64, requires = "dimensionless")]
    pub x_max: Option<f64>,
    #[arg(long, value_parser = parse_f64, requires = "dimensionless", allow_hyphen_values = true)]
    pub y_min: Option<f64>,
    #[arg(long, value_parser = parse_f64, requires = "dimensionless", allow_hyphen_values = true)]
    pub y_max: Option<f64>,
    /// Rabi frequency Ω, rad/s (physical axes).
    #[arg(long, value_name = "RAD_PER_S", value_parser = parse_non_negative, conflicts_with = "dimensionless")]
    pub omega_rabi_radps: Option<f64>,
    /// Time axis, s. Defaults: [0, 4π/Ω].
    #[arg(long, value_name = "S", value_parser = parse_non_negative, conflicts_with = "dimensionless")]
    pub tau_min_s: Option<f64>,
    #[arg(long, value_name = "S", value_parser = parse_positive, conflicts_with = "dimensionless")]
    pub tau_max_s: Option<f64>,
    /// Detuning axis, rad/s. Defaults: [−4Ω, 4Ω].
    #[arg(long, value_name = "RAD_PER_S", value_parser = parse_f64, allow_hyphen_values = true, conflicts_with = "dimensionless")]
    pub detuning_min_radps: Option<f64>,
    #[arg(long, value_name = "RAD_PER_S", value_parser = parse_f64, allow_hyphen_values = true, conflicts_with = "dimensionless")]
    pub detuning_max_radps: Option<f64>,
    /// Shorthand for the symmetric detuning axis [−Δω, Δω], rad/s.
    #[arg(
        long,
        value_name = "RAD_PER_S",
        value_parser = parse_positive,
        conflicts_with_all = ["dimensionless", "detuning_min_radps", "detuning_max_radps"]
    )]
    pub detuning_radps: Option<f64>,
    /// Samples along the time (X) axis.
    #[arg(long, default_value_t = 401)]
    pub nx: usize,
    /// Samples along the detuning (Y) axis.
    #[arg(long, default_value_t = 161)]
    pub ny: usize,
    /// Worker threads; the output does not depend on this.
    #[arg(long)]
    pub workers: Option<usize>,
    #[arg(long, value_enum, default_value_t = SurfaceFormat::Csv)]
    pub format: SurfaceFormat,
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct SliceArgs {
    #[arg(long, value_enum)]
    pub kind: KindArg,
    /// Fixed interaction time τ, s.
    #[arg(long, value_name = "S", value_parser = parse_positive)]
    pub tau_s: f64,
    /// Rabi frequency Ω, rad/s.
    #[arg(long, value_name = "RAD_PER_S", value_parser = parse_non_negative)]
    pub omega_rabi_radps: f64,
    /// Detuning range, rad/s.
    #[arg(long, value_name = "RAD_PER_S", value_parser = parse_f64, allow_hyphen_values = true)]
    pub detuning_min_radps: f64,
    #[arg(long, value_name = "RAD_PER_S", value_parser = parse_f64, allow_hyphen_values = true)]
    pub detuning_max_radps: f64,
    /// Number of detuning samples.
    #[arg(long, default_value_t = 1001)]
    pub n: usize,
    /// Locate detunings where the probability reaches 1.
    #[arg(long)]
    pub find_peaks: bool,
    /// Peak acceptance: |P − 1| ≤ tol.
    #[arg(long, default_value_t = 1e-9, value_parser = parse_positive)]
    pub peak_tol: f64,
    #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
    pub format: TableFormat,
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
#[command(group(ArgGroup::new("source").required(true).args(["t_s_ns", "atom"])))]
pub struct LifetimeArgs {
    /// Spontaneous emission time, ns.
    #[arg(long, value_name = "NS", value_parser = parse_positive, conflicts_with_all = ["atom", "presets"])]
    pub t_s_ns: Option<f64>,
    /// Derive t_S from an atom preset instead.
    #[arg(long)]
    pub atom: Option<String>,
    #[arg(long, value_name = "PATH", requires = "atom")]
    pub presets: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
    pub format: ReportFormat,
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct ValidateArgs {
    #[arg(long, value_enum)]
    pub suite: SuiteArg,
    /// Integrator relative tolerance, in (1e-14, 1e-3].
    #[arg(long, default_value_t = 1e-10, value_parser = parse_positive)]
    pub rel_tol: f64,
    /// Integrator absolute tolerance, in (1e-14, 1e-3].
    #[arg(long, default_value_t = 1e-12, value_parser = parse_positive)]
    pub abs_tol: f64,
    #[arg(long, value_enum, default_value_t = MethodArg::Dopri5)]
    pub method: MethodArg,
    /// Pass bar on the maximum absolute population error; suite default when absent.
    #[arg(long, value_parser = parse_positive)]
    pub bar: Option<f64>,
    /// Always exit 0 once the report is written.
    #[arg(long)]
    pub informational: bool,
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

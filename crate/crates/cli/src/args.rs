use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qheine_core::gfrac::{RatioForm, RatioVariant};
use qheine_core::Complex64;

#[derive(Debug, Parser)]
#[command(
    name = "qheine",
    version,
    about = "Heine series, shifted ratios and their geometry"
)]
pub struct Cli {
    /// Output format; each subcommand has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write the artifact here instead of stdout.
    #[arg(long, short = 'o', global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct ParamArgs {
    #[arg(short = 'a', allow_negative_numbers = true)]
    pub a: f64,
    #[arg(short = 'b', allow_negative_numbers = true)]
    pub b: f64,
    #[arg(short = 'c', allow_negative_numbers = true)]
    pub c: f64,
    #[arg(short = 'q')]
    pub q: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    #[value(alias = "bc")]
    ShiftBc,
    #[value(alias = "a")]
    ShiftA,
    #[value(alias = "all")]
    ShiftAll,
}

impl From<VariantArg> for RatioVariant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::ShiftBc => RatioVariant::ShiftBc,
            VariantArg::ShiftA => RatioVariant::ShiftA,
            VariantArg::ShiftAll => RatioVariant::ShiftAll,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormArg {
    Moment,
    Plain,
}

impl From<FormArg> for RatioForm {
    fn from(f: FormArg) -> Self {
        match f {
            FormArg::Moment => RatioForm::Moment,
            FormArg::Plain => RatioForm::Plain,
        }
    }
}

/// Complex numbers as `0.3`, `0.3+0.4i` or `-2i`.
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    s.trim()
        .parse::<Complex64>()
        .map_err(|_| format!("not a complex number: {s:?}"))
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate Φ, Gauss F or a shifted ratio at one point.
    Eval(EvalArgs),
    /// Residuals of the contiguous relations.
    Identities(IdentitiesArgs),
    /// Dump g_k and partial numerators p_k.
    Gfraction(GfractionArgs),
    /// Moment sequence of a ratio and its total-monotonicity verdict.
    Moments(MomentsArgs),
    /// Hypotheses, K_q sufficient conditions and the B_n verdict.
    Check(CheckArgs),
    /// Sample the K_q criterion for zΦ on a polar grid.
    Kq(KqArgs),
    /// Boundary curve of a map on |z| = r.
    Boundary(BoundaryArgs),
    /// Preset curves for figures 1..5.
    Figure(FigureArgs),
    /// Parameter sweep from a config file.
    Scan(ScanArgs),
}

#[derive(Debug, Args)]
#[group(id = "function", required = true, multiple = false)]
pub struct FunctionChoice {
    /// Heine's series Φ[a,b;c;q,z].
    #[arg(long)]
    pub phi: bool,
    /// Gauss series F(a,b;c;z).
    #[arg(long)]
    pub gauss: bool,
    /// Shifted ratio, including its z prefactor.
    #[arg(long, value_enum)]
    pub ratio: Option<VariantArg>,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[command(flatten)]
    pub function: FunctionChoice,
    #[arg(short = 'a', allow_negative_numbers = true)]
    pub a: f64,
    #[arg(short = 'b', allow_negative_numbers = true)]
    pub b: f64,
    #[arg(short = 'c', allow_negative_numbers = true)]
    pub c: f64,
    /// Required except for --gauss.
    #[arg(short = 'q')]
    pub q: Option<f64>,
    #[arg(short = 'z', value_parser = parse_complex, allow_hyphen_values = true)]
    pub z: Complex64,
    #[arg(long, value_enum, default_value = "moment")]
    pub form: FormArg,
    #[arg(long, default_value_t = 1e-14)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct IdentitiesArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(short = 'z', value_parser = parse_complex, allow_hyphen_values = true)]
    pub z: Complex64,
    /// Series truncation tolerance (absolute).
    #[arg(long, default_value_t = 1e-15)]
    pub tol: f64,
    /// Residual bound for a passing report.
    #[arg(long, default_value_t = 1e-11)]
    pub threshold: f64,
    /// Additional random points with |z| <= 0.8.
    #[arg(long, default_value_t = 0)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct GfractionArgs {
    #[arg(long, value_enum)]
    pub variant: VariantArg,
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(short = 'n', default_value_t = 20)]
    pub n: usize,
}

#[derive(Debug, Args)]
pub struct MomentsArgs {
    #[arg(long, value_enum)]
    pub variant: VariantArg,
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(short = 'n', default_value_t = 15)]
    pub n: usize,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Hypotheses of this ratio (repeatable). Without any selection flag all
    /// checks run.
    #[arg(long, value_enum)]
    pub variant: Vec<VariantArg>,
    /// K_q sufficient conditions.
    #[arg(long)]
    pub kq: bool,
    /// B_n monotonicity with this many terms.
    #[arg(long)]
    pub bn: Option<usize>,
}

#[derive(Debug, Args)]
pub struct KqArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, default_value_t = 64)]
    pub radii: usize,
    #[arg(long, default_value_t = 64)]
    pub angles: usize,
    #[arg(long, default_value_t = 0.99)]
    pub r_max: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MapArg {
    Identity,
    Ratio,
    Zphi,
    Gauss,
}

#[derive(Debug, Args)]
pub struct BoundaryArgs {
    #[arg(long, value_enum)]
    pub map: MapArg,
    #[arg(long, value_enum)]
    pub variant: Option<VariantArg>,
    #[arg(long, value_enum, default_value = "moment")]
    pub form: FormArg,
    #[arg(short = 'a', allow_negative_numbers = true)]
    pub a: Option<f64>,
    #[arg(short = 'b', allow_negative_numbers = true)]
    pub b: Option<f64>,
    #[arg(short = 'c', allow_negative_numbers = true)]
    pub c: Option<f64>,
    #[arg(short = 'q')]
    pub q: Option<f64>,
    #[arg(short = 'r', default_value_t = 0.99)]
    pub r: f64,
    #[arg(short = 'm', default_value_t = 1024)]
    pub m: usize,
}

#[derive(Debug, Args)]
pub struct FigureArgs {
    #[arg(value_parser = clap::value_parser!(u8).range(1..=5))]
    pub number: u8,
    /// Override c (figure 5 only).
    #[arg(short = 'c', long = "c")]
    pub c: Option<f64>,
    #[arg(short = 'm', default_value_t = 4096)]
    pub m: usize,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long)]
    pub config: PathBuf,
}

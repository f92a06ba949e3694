use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use paircrofton::bodies::FunctionKind;
use paircrofton::diagnostics::DEFAULT_TOLERANCE;
use paircrofton::functionals::{Element, Method};

#[derive(Debug, Parser)]
#[command(name = "paircrofton", version, about = "Pair-Crofton functionals of convex bodies")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub run: RunArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Mean width, surface area and width/brightness extrema of one body.
    BodyInfo,
    /// I (hyperplanes) or J (lines) for two bodies and a pair measure.
    Pair,
    /// Even-mode energies of the width or brightness function.
    Spectrum,
    /// Constant width and constant brightness verdicts.
    Classify,
    /// Residual of a theorem identity.
    Theorem,
    /// Legendre moments of a rotation invariant measure.
    Beta,
    /// Classical Crofton integrals of one body.
    Crofton,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::BodyInfo => "body-info",
            Command::Pair => "pair",
            Command::Spectrum => "spectrum",
            Command::Classify => "classify",
            Command::Theorem => "theorem",
            Command::Beta => "beta",
            Command::Crofton => "crofton",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Spectral,
    Direct,
    Montecarlo,
    Discrete,
    All,
}

impl MethodArg {
    pub fn single(self) -> Option<Method> {
        match self {
            MethodArg::Spectral => Some(Method::Spectral),
            MethodArg::Direct => Some(Method::Direct),
            MethodArg::Montecarlo => Some(Method::Montecarlo),
            MethodArg::Discrete => Some(Method::Discrete),
            MethodArg::All => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ElementArg {
    Hyperplanes,
    Lines,
}

impl From<ElementArg> for Element {
    fn from(e: ElementArg) -> Self {
        match e {
            ElementArg::Hyperplanes => Element::Hyperplanes,
            ElementArg::Lines => Element::Lines,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FunctionArg {
    Width,
    Brightness,
}

impl From<FunctionArg> for FunctionKind {
    fn from(f: FunctionArg) -> Self {
        match f {
            FunctionArg::Width => FunctionKind::Width,
            FunctionArg::Brightness => FunctionKind::Brightness,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Flags shared by every command; each command reads the ones it needs.
#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    /// Body spec (JSON).
    #[arg(long, global = true)]
    pub body: Option<PathBuf>,
    /// Second body spec; defaults to the first body.
    #[arg(long, global = true)]
    pub body2: Option<PathBuf>,
    /// Pair measure spec (JSON).
    #[arg(long, global = true)]
    pub measure: Option<PathBuf>,
    /// Ambient dimension; must agree with every spec that fixes one.
    #[arg(long, global = true, value_parser = clap::value_parser!(u8).range(2..=3))]
    pub dim: Option<u8>,
    /// Evaluation route. Defaults to all applicable routes for `pair`.
    #[arg(long, global = true, value_enum)]
    pub method: Option<MethodArg>,
    /// Truncation order M. Defaults to 40 for integrals, 24 for verdicts.
    #[arg(long, global = true)]
    pub modes: Option<usize>,
    /// Monte Carlo sample count.
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    /// Monte Carlo seed.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Monte Carlo worker count; part of the reproducibility contract.
    #[arg(long, global = true, default_value_t = 1)]
    pub workers: usize,
    /// Monte Carlo reference radius; defaults to the larger enclosing radius.
    #[arg(long, global = true)]
    pub radius: Option<f64>,
    /// Relative tolerance for verdicts and first failing modes.
    #[arg(long, global = true, default_value_t = DEFAULT_TOLERANCE)]
    pub tol: f64,
    /// Hyperplane pairs (I) or line pairs (J).
    #[arg(long, global = true, value_enum, default_value = "hyperplanes")]
    pub elements: ElementArg,
    /// Body function analysed by `spectrum`.
    #[arg(long, global = true, value_enum, default_value = "width")]
    pub function: FunctionArg,
    /// Theorem checked by `theorem` (T1.1, T1.2 or T1.3).
    #[arg(long, global = true, default_value = "T1.1")]
    pub theorem: String,
    /// Resolution of the spectral rule: octant order on S², node count on S¹.
    #[arg(long, global = true)]
    pub sphere_res: Option<usize>,
    /// Resolution of the direct rule, same meaning as --sphere-res.
    #[arg(long, global = true)]
    pub direct_res: Option<usize>,
    /// Points per slice for psi atoms on the direct route.
    #[arg(long, global = true, default_value_t = paircrofton::functionals::DEFAULT_SLICE_RESOLUTION)]
    pub slice_res: usize,
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

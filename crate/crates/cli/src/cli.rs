//! Command-line surface.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use degseq_core::Field;

#[derive(Parser, Debug, Clone)]
#[command(name = "degseq", version, about = "Exact degree sequences of iterated rational maps")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Base field: Q, or a prime p written as `p`, `Fp` or `F_p`.
    #[arg(long, global = true, default_value = "Q", value_parser = parse_field)]
    pub field: Field,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the output here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// Cap on the number of terms of any polynomial.
    #[arg(long, global = true, env = "DEGSEQ_BUDGET")]
    pub budget: Option<usize>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum StrategyArg {
    /// `f^n = f o f^(n-1)`.
    Left,
    /// Binary powering from scratch for each `n`.
    Squaring,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Degrees of f, f^2, ..., f^N with the drop at each step.
    Degrees(DegreesArgs),
    /// Growth classification of a computed or supplied sequence.
    Classify(ClassifyArgs),
    /// Check deg(f^d) = deg(f)^d for an affine map.
    Aut1(Aut1Args),
    /// Maximal degrees over the word balls of a finite set of maps.
    Ball(BallArgs),
    /// Look for f^(i+p) = f^i over a finite field.
    Period(PeriodArgs),
    /// Evaluate the counting bounds for automorphisms and for maps over F_q.
    Bounds(BoundsArgs),
    /// List the built-in maps, or run one against its expected law.
    Gallery(GalleryArgs),
    /// Write n vs degree and its log-log transform as two-column text files.
    Plotdata(PlotArgs),
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// Map literal, `P<d> [c0 : ... : cd]` or `A<d> (c1, ..., cd)`.
    #[arg(long)]
    pub map: Option<String>,
    /// Name of a built-in map.
    #[arg(long)]
    pub gallery: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct DegreesArgs {
    #[command(flatten)]
    pub source: Source,
    #[arg(long, short, default_value_t = 10)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = StrategyArg::Left)]
    pub strategy: StrategyArg,
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct ClassifyInput {
    #[arg(long)]
    pub map: Option<String>,
    #[arg(long)]
    pub gallery: Option<String>,
    /// Comma-separated degrees to classify instead of computing them.
    #[arg(long, value_delimiter = ',')]
    pub values: Option<Vec<u64>>,
}

#[derive(Args, Debug, Clone)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub input: ClassifyInput,
    /// Dimension for threshold checks on `--values`.
    #[arg(long)]
    pub dim: Option<u32>,
    #[arg(long, short, default_value_t = 30)]
    pub n: usize,
    /// Minimum growth ratio for an exponential label.
    #[arg(long, default_value_t = degseq_core::growth::DEFAULT_EPS_EXP)]
    pub eps_exp: f64,
    /// Largest acceptable fit residual.
    #[arg(long, default_value_t = degseq_core::growth::DEFAULT_FIT_TOLERANCE)]
    pub fit_tolerance: f64,
    /// Field size for the logarithmic threshold; defaults to p over F_p.
    #[arg(long)]
    pub q: Option<u64>,
}

#[derive(Args, Debug, Clone)]
pub struct Aut1Args {
    #[command(flatten)]
    pub source: Source,
    /// The map is known to be an automorphism; enables the degree prediction.
    #[arg(long)]
    pub assert_automorphism: bool,
    /// How many predicted degrees to print.
    #[arg(long, short, default_value_t = 10)]
    pub n: usize,
}

#[derive(Args, Debug, Clone)]
pub struct BallArgs {
    /// A generator; repeat for several.
    #[arg(long = "gen", required = true)]
    pub generators: Vec<String>,
    #[arg(long, default_value_t = 4)]
    pub radius: usize,
    /// Field size for the logarithmic threshold; defaults to p over F_p.
    #[arg(long)]
    pub q: Option<u64>,
}

#[derive(Args, Debug, Clone)]
pub struct PeriodArgs {
    #[command(flatten)]
    pub source: Source,
    #[arg(long, default_value_t = 50)]
    pub max_steps: usize,
}

#[derive(Args, Debug, Clone)]
pub struct BoundsArgs {
    #[arg(long)]
    pub d: u32,
    #[arg(long = "K")]
    pub k: u64,
    /// Also count maps of degree K over F_q.
    #[arg(long)]
    pub q: Option<u64>,
}

#[derive(Args, Debug, Clone)]
pub struct GalleryArgs {
    /// Run this entry instead of listing.
    #[arg(long)]
    pub run: Option<String>,
    #[arg(long, short, default_value_t = 10)]
    pub n: usize,
}

#[derive(Args, Debug, Clone)]
pub struct PlotArgs {
    #[command(flatten)]
    pub source: Source,
    #[arg(long, short, default_value_t = 30)]
    pub n: usize,
    /// Files are written to `<prefix>.dat` and `<prefix>.loglog.dat`.
    #[arg(long)]
    pub prefix: PathBuf,
}

pub fn parse_field(s: &str) -> Result<Field, String> {
    let t = s.trim();
    if matches!(t, "Q" | "QQ" | "q") {
        return Ok(Field::Rational);
    }
    let digits = t.strip_prefix("F_").or_else(|| t.strip_prefix('F')).unwrap_or(t);
    let p: u64 = digits.parse().map_err(|_| format!("expected Q or a prime, got `{}`", s))?;
    Field::prime(p).map_err(|e| e.to_string())
}

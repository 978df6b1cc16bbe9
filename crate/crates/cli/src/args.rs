//! Command-line surface. Every option is optional here so that values from
//! a config file can fill the gaps; flags always win.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Iterate until the step returns its input.
    Exact,
    /// Iterate until successive iterates are within the tolerance.
    Metric,
}

#[derive(Debug, Parser)]
#[command(name = "dualdag", version, about = "Law suites, fixed points, traces and reversible programs over dagger categories")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// TOML file with default option values; flags override it.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Include wall-clock times in reports (makes them non-reproducible).
    #[arg(long, global = true)]
    pub timings: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run law suites over one or more categories.
    Laws(LawsArgs),
    /// Least fixed point of an endo-functional given as a JSON document.
    Fix(FixArgs),
    /// Dagger trace of a morphism given as a JSON document.
    Trace(TraceArgs),
    /// Evaluate a reversible program on a value.
    Run(RunArgs),
    /// Print the inverse of a reversible program.
    Invert(InvertArgs),
    /// Check that a program followed by its inverse is the identity.
    Roundtrip(RoundtripArgs),
}

#[derive(Debug, Args)]
pub struct LawsArgs {
    /// rel, pinj, dstoch or all (repeatable, comma-separated).
    #[arg(long, value_delimiter = ',')]
    pub category: Vec<String>,
    /// Suite names or `all` (repeatable, comma-separated).
    #[arg(long, value_delimiter = ',')]
    pub suite: Vec<String>,
    /// Range over object sizes 0..=N.
    #[arg(long, conflicts_with = "sizes")]
    pub max_size: Option<usize>,
    /// Explicit object sizes.
    #[arg(long, value_delimiter = ',')]
    pub sizes: Option<Vec<usize>>,
    /// Random instances per randomized suite.
    #[arg(long)]
    pub trials: Option<usize>,
    /// Seed for every randomized suite.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Tolerance for real-valued comparisons.
    #[arg(long)]
    pub tolerance: Option<f64>,
    /// Largest hom-set (in matrix cells) enumerated exhaustively.
    #[arg(long)]
    pub enum_cap: Option<usize>,
}

#[derive(Debug, Args)]
pub struct FixArgs {
    /// Functional document (JSON).
    pub file: PathBuf,
    #[arg(long)]
    pub max_iterations: Option<usize>,
    #[arg(long)]
    pub tolerance: Option<f64>,
    #[arg(long, value_enum)]
    pub mode: Option<Mode>,
}

#[derive(Debug, Args)]
pub struct TraceArgs {
    /// Morphism document (JSON) for f : X ⊎ U -> Y ⊎ U.
    pub file: PathBuf,
    /// Size of the traced-out object U.
    #[arg(long)]
    pub u: usize,
    /// Size of X; defaults to the source size minus U.
    #[arg(long)]
    pub x: Option<usize>,
    /// Size of Y; defaults to the target size minus U.
    #[arg(long)]
    pub y: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ProgramArgs {
    /// A `.rvl` file, or the name of a bundled program (swap, add, map).
    pub program: String,
    /// Entry function; defaults to the bundled entry or the first definition.
    #[arg(long)]
    pub function: Option<String>,
    /// Function-parameter bindings such as `g=inc` or `g=inc†`.
    #[arg(long = "bind", value_name = "PARAM=FUNCTION")]
    pub bind: Vec<String>,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub program: ProgramArgs,
    /// Input value literal, e.g. "(S Z, S Z)".
    #[arg(long)]
    pub arg: String,
    #[arg(long)]
    pub fuel: Option<u64>,
    /// Run the inverse instead.
    #[arg(long)]
    pub inverse: bool,
}

#[derive(Debug, Args)]
pub struct InvertArgs {
    #[command(flatten)]
    pub program: ProgramArgs,
    /// Suffix appended to every inverted definition.
    #[arg(long)]
    pub suffix: Option<String>,
    /// Write the inverted program here instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RoundtripArgs {
    #[command(flatten)]
    pub program: ProgramArgs,
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long)]
    pub fuel: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Input sampler: terms[:BOUND], nat[:MAX], nat-pair[:MAX], nat-list[:LEN[:MAX]].
    #[arg(long)]
    pub sample: Option<String>,
    #[arg(long)]
    pub suffix: Option<String>,
}

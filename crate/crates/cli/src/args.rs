use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "kemeny", version, about = "Exact search-space reduction for Kemeny rank aggregation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run reduction rules on one PrefLib file and write a JSON report.
    Reduce(ReduceArgs),
    /// Summarize rules over files or a generated Mallows batch.
    Stats(StatsArgs),
    /// Write Mallows instances as canonical .soc files.
    Sample(SampleArgs),
    /// Check rule output against exhaustive median enumeration (n <= 10).
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Args)]
pub struct RuleArgs {
    /// Rule to run; repeat for several. Defaults to every built-in rule.
    #[arg(long = "rule", value_name = "NAME")]
    pub rules: Vec<String>,

    /// Block size at or below which splitting stops.
    #[arg(long, default_value_t = 2)]
    pub threshold: usize,

    /// Skip the position-bounded refinement inside `combined`.
    #[arg(long)]
    pub no_refine: bool,
}

/// Instances come from files, or from a Mallows batch when no file is given.
#[derive(Debug, Clone, Args)]
pub struct SourceArgs {
    /// PrefLib .soc or .soi files.
    #[arg(value_name = "FILE")]
    pub files: Vec<PathBuf>,

    #[command(flatten)]
    pub mallows: MallowsArgs,
}

#[derive(Debug, Clone, Args)]
pub struct MallowsArgs {
    /// Number of candidates.
    #[arg(long)]
    pub n: Option<usize>,

    /// Number of votes.
    #[arg(long)]
    pub m: Option<u64>,

    /// Dispersion in (0, 1]; 1 is uniform.
    #[arg(long, default_value_t = 1.0)]
    pub theta: f64,

    /// Number of instances.
    #[arg(long, default_value_t = 1)]
    pub count: u64,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct ReduceArgs {
    #[arg(value_name = "FILE")]
    pub file: PathBuf,

    #[command(flatten)]
    pub rules: RuleArgs,

    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Leave wall-clock timings out of the report.
    #[arg(long)]
    pub no_timing: bool,
}

#[derive(Debug, Clone, Args)]
pub struct StatsArgs {
    #[command(flatten)]
    pub source: SourceArgs,

    #[command(flatten)]
    pub rules: RuleArgs,

    /// Check every report against the oracle and add a `certified` column.
    #[arg(long)]
    pub certify: bool,

    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    #[arg(long)]
    pub out: Option<PathBuf>,

    #[arg(long)]
    pub no_timing: bool,
}

#[derive(Debug, Clone, Args)]
pub struct SampleArgs {
    #[command(flatten)]
    pub mallows: MallowsArgs,

    /// Directory for the generated files.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub source: SourceArgs,

    #[command(flatten)]
    pub rules: RuleArgs,

    #[arg(long)]
    pub out: Option<PathBuf>,
}

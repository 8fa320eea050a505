//! `seaidx`: generate, summarize, sample, index, query and evaluate data series.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Data(#[from] seaidx::Error),
    #[error("writing output: {0}")]
    Output(#[from] std::io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Data(_) | CliError::Output(_) => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "seaidx", version, about = "Summarize, sample, index and search data series")]
pub struct Cli {
    /// File of `key=value` lines used as default flag values; command-line flags win.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Worker threads for parallel steps (default: one per core).
    #[arg(long, global = true, env = "SEAIDX_THREADS", value_name = "N")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a seeded synthetic dataset (z-normalized).
    Gen(GenArgs),
    /// Summarize a dataset into SAX words (and DEA vectors for DEA kinds).
    Summarize(SummarizeArgs),
    /// Draw a SEAsam or uniform sample of series ids.
    Sample(SampleArgs),
    /// Build an iSAX tree over a SAX file and print its statistics.
    Index(IndexArgs),
    /// Answer budget-limited approximate queries and report tightness.
    Query(QueryArgs),
    /// Compute an evaluation measure.
    Eval(EvalArgs),
    /// Describe a dataset, DEA, SAX or sample file.
    Stats(StatsArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenKindArg {
    Randwalk,
    F5,
    F10,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub kind: GenKindArg,
    /// Number of series.
    #[arg(long)]
    pub n: usize,
    /// Series length.
    #[arg(long, default_value_t = 256)]
    pub m: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output base path; writes `<out>.bin` and `<out>.meta`.
    #[arg(long)]
    pub out: PathBuf,
    /// Amplification of the low-frequency band (F-series only).
    #[arg(long, default_value_t = seaidx::datagen::DEFAULT_AMP)]
    pub amp: f64,
    /// Also write this many query series to `<out>.queries.{bin,meta}`.
    #[arg(long, default_value_t = 0)]
    pub queries: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SummaryArg {
    /// Piecewise aggregate approximation.
    Paa,
    /// Truncated DFT, SoS-scaled.
    DftDea,
    /// Precomputed embeddings read from `--embedding`.
    Dea,
}

#[derive(Debug, Args)]
pub struct SummarizeArgs {
    /// Dataset base path (`<path>.bin` / `<path>.meta`).
    #[arg(long)]
    pub dataset: PathBuf,
    #[arg(long, value_enum)]
    pub kind: SummaryArg,
    /// DEA file base path, required for `--kind dea`.
    #[arg(long)]
    pub embedding: Option<PathBuf>,
    /// Summary length.
    #[arg(long, default_value_t = seaidx::summarization::DEFAULT_SEGMENTS)]
    pub l: usize,
    /// Bits per SAX symbol.
    #[arg(long, default_value_t = seaidx::summarization::DEFAULT_BITS)]
    pub bits: u8,
    /// Output base path; writes `<out>.sax` (+ `<out>.bin` DEA vectors for DEA kinds).
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Seasam,
    Uniform,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[arg(long)]
    pub dataset: Option<PathBuf>,
    /// Order SEAsam by these SAX words instead of the dataset's PAA words.
    #[arg(long)]
    pub sax: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "seasam")]
    pub strategy: StrategyArg,
    #[arg(long)]
    pub n_prime: usize,
    /// Seed for uniform sampling.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = seaidx::summarization::DEFAULT_SEGMENTS)]
    pub l: usize,
    #[arg(long, default_value_t = seaidx::summarization::DEFAULT_BITS)]
    pub bits: u8,
    /// Output base path; writes `<out>.idx` and `<out>.idx.meta`.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct IndexArgs {
    /// SAX file base path.
    #[arg(long)]
    pub sax: PathBuf,
    #[arg(long, default_value_t = seaidx::index::DEFAULT_LEAF_SIZE)]
    pub leaf_size: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum QuerySummaryArg {
    Paa,
    DftDea,
}

#[derive(Debug, Args)]
pub struct QueryArgs {
    #[arg(long)]
    pub dataset: PathBuf,
    /// SAX file of the dataset, as written by `summarize`.
    #[arg(long)]
    pub sax: PathBuf,
    /// Query dataset base path.
    #[arg(long)]
    pub queries: PathBuf,
    /// Precomputed query DEAs (for trees over trained embeddings).
    #[arg(long)]
    pub query_embedding: Option<PathBuf>,
    /// How to summarize queries when no `--query-embedding` is given
    /// (default: PAA for PAA trees).
    #[arg(long, value_enum)]
    pub query_summary: Option<QuerySummaryArg>,
    #[arg(long, default_value_t = seaidx::index::DEFAULT_LEAF_SIZE)]
    pub leaf_size: usize,
    /// Comma-separated series budgets.
    #[arg(long, value_delimiter = ',', default_value = "100,1000")]
    pub budgets: Vec<usize>,
    /// Print only the per-budget means.
    #[arg(long)]
    pub summary_only: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MetricArg {
    /// Pairwise-distance moments of Gaussian series, analytic and Monte Carlo.
    Chi,
    /// Mean |summary distance - true distance| over SEAsam pairs.
    AvgDiff,
    /// Reconstruction RMS error.
    Rms,
    /// Nearest-neighbor coverage in summary space.
    NnCoverage,
    /// Index-free tightness upper bound.
    IdealTightness,
    /// Distinct leaves hit by SEAsam and uniform samples.
    LeafCoverage,
    /// Mean pairwise distance inside the leaves a query visits.
    Compactness,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long, value_enum)]
    pub metric: MetricArg,
    #[arg(long)]
    pub dataset: Option<PathBuf>,
    #[arg(long)]
    pub queries: Option<PathBuf>,
    /// Summarization compared against true distances.
    #[arg(long, value_enum, default_value = "paa")]
    pub summary: SummaryArg,
    /// Dataset DEAs for `--summary dea`.
    #[arg(long)]
    pub embedding: Option<PathBuf>,
    /// Query DEAs for `--summary dea`.
    #[arg(long)]
    pub query_embedding: Option<PathBuf>,
    /// Reconstructed dataset for `rms`.
    #[arg(long)]
    pub reconstruction: Option<PathBuf>,
    #[arg(long, default_value_t = seaidx::summarization::DEFAULT_SEGMENTS)]
    pub l: usize,
    #[arg(long, default_value_t = seaidx::summarization::DEFAULT_BITS)]
    pub bits: u8,
    #[arg(long, default_value_t = seaidx::index::DEFAULT_LEAF_SIZE)]
    pub leaf_size: usize,
    #[arg(long, value_delimiter = ',', default_value = "1,10,100,1000")]
    pub budgets: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "1,5,10,50,100,500,1000")]
    pub ks: Vec<usize>,
    /// SEAsam sample size for `avg-diff`.
    #[arg(long, default_value_t = 20_000)]
    pub n_prime: usize,
    #[arg(long, value_delimiter = ',', default_value = "100,1000,10000")]
    pub sample_sizes: Vec<usize>,
    /// Number of uniform-sampling seeds for `leaf-coverage`.
    #[arg(long, default_value_t = 10)]
    pub seeds: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Series lengths for `chi`.
    #[arg(long, value_delimiter = ',', default_value = "256,128,96,16,8")]
    pub m: Vec<usize>,
    /// Monte Carlo pairs for `chi`.
    #[arg(long, default_value_t = 100_000)]
    pub pairs: usize,
    /// Also append the reports to this CSV file.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    #[arg(long)]
    pub dataset: Option<PathBuf>,
    #[arg(long)]
    pub dea: Option<PathBuf>,
    #[arg(long)]
    pub sax: Option<PathBuf>,
    /// Leaf size for the tree statistics printed with `--sax`.
    #[arg(long, default_value_t = seaidx::index::DEFAULT_LEAF_SIZE)]
    pub leaf_size: usize,
    #[arg(long)]
    pub sample: Option<PathBuf>,
}

fn run() -> Result<(), CliError> {
    let args = config::splice(std::env::args_os().collect(), &Cli::command())?;
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    if let Some(threads) = cli.threads {
        if threads == 0 {
            return Err(CliError::Usage("--threads must be >= 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    let mut out = std::io::stdout().lock();
    commands::dispatch(cli.command, &mut out)
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

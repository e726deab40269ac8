//! Command-line surface.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "mvsc",
    version,
    about = "Joint multi-view subspace clustering experiment runner"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Run repeated clustering trials and write metrics and artifacts
    Run(RunArgs),
    /// Grid-search the three weights and report the best cell
    Grid(GridArgs),
    /// Write a synthetic multi-view dataset to disk
    Synth(SynthArgs),
    /// Evaluate the six metrics for a predicted vs a true label file
    Eval(EvalArgs),
}

#[derive(Args, Clone, Default)]
pub struct RunArgs {
    /// Key/value config file; command-line flags win over it
    #[arg(long)]
    pub config: Option<PathBuf>,

    /// Dataset manifest path
    #[arg(long)]
    pub manifest: Option<PathBuf>,

    /// Synthetic source: number of clusters
    #[arg(long)]
    pub synth_k: Option<usize>,
    /// Synthetic source: samples per cluster
    #[arg(long)]
    pub synth_per_cluster: Option<usize>,
    /// Synthetic source: comma-separated ambient dims, one per view (e.g. 50,60,40)
    #[arg(long)]
    pub synth_dims: Option<String>,
    /// Synthetic source: subspace dimension
    #[arg(long)]
    pub synth_subspace_dim: Option<usize>,
    /// Synthetic source: noise level
    #[arg(long)]
    pub synth_noise: Option<f64>,
    /// Synthetic source: generator seed (defaults to the experiment seed)
    #[arg(long)]
    pub synth_seed: Option<u64>,

    /// Named hyperparameter preset: orl | yale
    #[arg(long)]
    pub preset: Option<String>,
    #[arg(long)]
    pub lambda1: Option<f64>,
    #[arg(long)]
    pub lambda2: Option<f64>,
    #[arg(long)]
    pub lambda3: Option<f64>,
    #[arg(long)]
    pub max_iters: Option<usize>,
    #[arg(long)]
    pub rel_tol: Option<f64>,

    /// Number of clusters (defaults to the ground-truth cluster count)
    #[arg(long)]
    pub k: Option<usize>,
    /// Number of repeated trials
    #[arg(long)]
    pub trials: Option<usize>,
    /// Base seed; trial t uses seed + t
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output directory (default: $MVSC_OUT or ./mvsc-out)
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Write per-trial objective traces (trace_<t>.csv)
    #[arg(long)]
    pub dump_trace: bool,
    /// Write per-trial fused affinities (affinity_<t>.csv)
    #[arg(long)]
    pub dump_affinity: bool,
    /// Write per-trial self-representations (Z_<view>_<t>.csv)
    #[arg(long)]
    pub dump_representations: bool,
}

#[derive(Args)]
pub struct GridArgs {
    #[command(flatten)]
    pub run: RunArgs,

    /// Comma-separated grid for lambda1 (defaults to the single resolved value)
    #[arg(long)]
    pub grid_lambda1: Option<String>,
    /// Comma-separated grid for lambda2
    #[arg(long)]
    pub grid_lambda2: Option<String>,
    /// Comma-separated grid for lambda3
    #[arg(long)]
    pub grid_lambda3: Option<String>,
    /// Selection metric: nmi | acc | ari | f | precision | recall
    #[arg(long)]
    pub metric: Option<String>,
}

#[derive(Args)]
pub struct SynthArgs {
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub per_cluster: usize,
    /// Comma-separated ambient dims, one per view
    #[arg(long)]
    pub dims: String,
    #[arg(long)]
    pub subspace_dim: usize,
    #[arg(long, default_value_t = 0.0)]
    pub noise: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Directory to write manifest + CSVs into
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args)]
pub struct EvalArgs {
    /// Predicted labels, one id per line
    pub pred: PathBuf,
    /// Ground-truth labels, one id per line
    pub truth: PathBuf,
}

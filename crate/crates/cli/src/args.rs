use std::path::PathBuf;

use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "nntopo", version, about = "Topological complexity of data and dense-network layers")]
pub struct Cli {
    /// Worker threads for per-class homology and per-width sweep items.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Closed-form Betti-number bounds per layer.
    Bounds(BoundsArgs),
    /// Vietoris–Rips barcode of a CSV point cloud.
    Homology(HomologyArgs),
    /// Train a dense network and write a checkpoint.
    Train(TrainArgs),
    /// Per-class Betti profiles of the input and one hidden layer.
    Analyze(AnalyzeArgs),
    /// Train equal-width networks over widths and seeds.
    Sweep(SweepArgs),
    /// Solve and verify ReLU decision-boundary pieces.
    Cover(CoverArgs),
    /// Re-run a command from its config.txt echo.
    Replay(ReplayArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ActKind {
    Relu,
    Poly,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReductionKind {
    Clearing,
    Standard,
}

#[derive(Args, Debug)]
pub struct BoundsArgs {
    /// Widths n_0,...,n_(l-1); a single value repeats over --layers.
    #[arg(long, value_delimiter = ',', required = true)]
    pub widths: Vec<usize>,
    /// Number of layers l when a single width is given.
    #[arg(long, default_value_t = 3)]
    pub layers: usize,
    #[arg(long)]
    pub classes: usize,
    #[arg(long, value_enum)]
    pub act: ActKind,
    /// Degree r of the polynomial activation.
    #[arg(long, default_value_t = 2)]
    pub degree: usize,
    /// Homology dimensions.
    #[arg(long, value_delimiter = ',', default_value = "0")]
    pub k: Vec<usize>,
    /// Report the smallest width whose bound reaches this value.
    #[arg(long)]
    pub target: Option<String>,
    /// Layer varied by the width search: an index or `all`.
    #[arg(long, default_value = "all")]
    pub free: String,
    /// Layer at which the bound is compared with --target.
    #[arg(long, default_value_t = 1)]
    pub at_layer: usize,
    #[arg(long, default_value_t = 4096)]
    pub cap: usize,
    #[arg(long, default_value = "nntopo-out/bounds")]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct HomologyArgs {
    /// CSV file, one point per line.
    #[arg(long)]
    pub points: PathBuf,
    /// Treat the last column as an integer class label.
    #[arg(long, default_value_t = false, action = ArgAction::Set)]
    pub label_column: bool,
    /// Keep only points with this label.
    #[arg(long)]
    pub class: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub max_dim: usize,
    /// Filtration cutoff; defaults to the largest pairwise distance.
    #[arg(long)]
    pub max_radius: Option<f64>,
    #[arg(long, value_enum, default_value_t = ReductionKind::Clearing)]
    pub reduction: ReductionKind,
    #[arg(long, default_value = "nntopo-out/homology")]
    pub out: PathBuf,
}

#[derive(Args, Debug, Clone)]
pub struct DataArgs {
    /// MNIST IDX directory or labelled CSV file (label in the last column).
    #[arg(long)]
    pub data: PathBuf,
    /// Held-out set; defaults to the t10k split of an IDX directory.
    #[arg(long)]
    pub test: Option<PathBuf>,
    /// Keep only the first N training samples.
    #[arg(long)]
    pub limit: Option<usize>,
    /// Keep only the first N test samples.
    #[arg(long)]
    pub test_limit: Option<usize>,
}

#[derive(Args, Debug, Clone)]
pub struct NetArgs {
    #[arg(long, value_enum, default_value_t = ActKind::Relu)]
    pub act: ActKind,
    /// Degree of the monomial activation x^r.
    #[arg(long, default_value_t = 2)]
    pub degree: usize,
    #[arg(long, default_value_t = true, action = ArgAction::Set)]
    pub batch_norm: bool,
    #[arg(long, default_value_t = 5)]
    pub epochs: usize,
    #[arg(long, default_value_t = 0.05)]
    pub lr: f64,
    #[arg(long, default_value_t = 32)]
    pub batch_size: usize,
    #[arg(long, default_value_t = 0.9)]
    pub momentum: f64,
}

#[derive(Args, Debug, Clone)]
pub struct ProfileArgs {
    /// Points sampled per class.
    #[arg(long, default_value_t = 200)]
    pub cap: usize,
    /// Smallest radius of the log grid.
    #[arg(long, default_value_t = 1e-3)]
    pub grid_min: f64,
    #[arg(long, default_value_t = 64)]
    pub grid_points: usize,
}

#[derive(Args, Debug)]
pub struct TrainArgs {
    #[command(flatten)]
    pub data: DataArgs,
    /// Hidden-layer widths.
    #[arg(long, value_delimiter = ',', required = true)]
    pub widths: Vec<usize>,
    #[command(flatten)]
    pub net: NetArgs,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = "nntopo-out/train")]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct AnalyzeArgs {
    #[arg(long)]
    pub checkpoint: PathBuf,
    #[command(flatten)]
    pub data: DataArgs,
    /// Hidden layer to profile.
    #[arg(long)]
    pub layer: usize,
    #[command(flatten)]
    pub profile: ProfileArgs,
    #[arg(long, default_value_t = 0.5)]
    pub threshold: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = "nntopo-out/analyze")]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[command(flatten)]
    pub data: DataArgs,
    /// Strictly increasing hidden widths.
    #[arg(long, value_delimiter = ',', required = true)]
    pub widths: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
    pub seeds: Vec<u64>,
    #[arg(long, default_value_t = 3)]
    pub hidden_layers: usize,
    /// Hidden layer profiled in every run.
    #[arg(long, default_value_t = 3)]
    pub layer: usize,
    #[command(flatten)]
    pub net: NetArgs,
    #[command(flatten)]
    pub profile: ProfileArgs,
    #[arg(long, default_value_t = 0)]
    pub profile_seed: u64,
    #[arg(long, default_value = "nntopo-out/sweep")]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct CoverArgs {
    #[arg(long)]
    pub checkpoint: PathBuf,
    /// Class j.
    #[arg(long)]
    pub class: usize,
    /// Classes tied with j; every single class when omitted.
    #[arg(long, value_delimiter = ',')]
    pub alphas: Vec<usize>,
    /// Layer i whose activations are solved for.
    #[arg(long)]
    pub layer: usize,
    #[arg(long, default_value_t = 20)]
    pub samples: usize,
    /// Free variables are drawn from [0, box].
    #[arg(long = "box", default_value_t = 1.0)]
    pub box_size: f64,
    #[arg(long, default_value_t = 200_000)]
    pub max_attempts: usize,
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = "nntopo-out/cover")]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct ReplayArgs {
    /// A config.txt written by an earlier run.
    #[arg(long)]
    pub config: PathBuf,
    /// Override the recorded output directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

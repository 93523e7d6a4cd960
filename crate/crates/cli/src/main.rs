//! `tropfw` command-line interface.

mod commands;
mod config;
mod io;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::io::UsageError;

#[derive(Parser, Debug)]
#[command(
    name = "tropfw",
    version,
    about = "Tropical Fermat-Weber points, Bergman-fan projection and species-tree experiments"
)]
struct Cli {
    /// Worker threads for trial execution (default: logical cores)
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Fermat-Weber point of the rows of a CSV file
    Fw(FwArgs),
    /// Project vectors onto the Bergman fan of a matroid
    Project(ProjectArgs),
    /// Simulate gene trees under the multispecies coalescent
    Simulate(SimulateArgs),
    /// Run the estimator comparison described by a config file
    Experiment(ExperimentArgs),
    /// Perturb copies of the species tree and check topology recovery
    SafetyDemo(ExperimentArgs),
    /// Scaled Fermat-Weber shift under small perturbations
    Hausdorff(HausdorffArgs),
    /// Monte-Carlo moments of the tropical norm of a standard normal vector
    Moments(MomentsArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum MetricArg {
    Sym,
    Min,
    Max,
}

impl From<MetricArg> for tropfw::Metric {
    fn from(m: MetricArg) -> Self {
        match m {
            MetricArg::Sym => tropfw::Metric::Sym,
            MetricArg::Min => tropfw::Metric::MinPlus,
            MetricArg::Max => tropfw::Metric::MaxPlus,
        }
    }
}

#[derive(Args, Debug, Clone)]
#[group(multiple = false)]
pub struct MatroidArgs {
    /// Use the graphic matroid of the complete graph on <p> vertices
    #[arg(long, value_name = "p")]
    graphic: Option<usize>,
    /// Read the matroid from a circuit file (`q=<n>` then one circuit per line)
    #[arg(long, value_name = "file")]
    matroid: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct FwArgs {
    /// CSV file, one sample point per row; an optional header of `A|B` pair labels
    #[arg(long)]
    input: PathBuf,
    /// Distance to minimize
    #[arg(long, value_enum, default_value = "sym")]
    metric: MetricArg,
    /// Also project the point onto the Bergman fan (complete graph by default)
    #[arg(long)]
    project: bool,
    #[command(flatten)]
    matroid: MatroidArgs,
    /// Write the report here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ProjectArgs {
    /// A single comma-separated vector
    #[arg(long, allow_hyphen_values = true, conflicts_with = "input")]
    vector: Option<String>,
    /// CSV file, one vector per row
    #[arg(long)]
    input: Option<PathBuf>,
    #[command(flatten)]
    matroid: MatroidArgs,
    /// Write the projected vectors here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum GeneFormat {
    Newick,
    Csv,
}

#[derive(Args, Debug)]
pub struct SimulateArgs {
    /// Species tree: a Newick file, or the built-in `t1` / `t2`
    #[arg(long)]
    species_tree: String,
    /// Effective population size, in generations
    #[arg(long)]
    ne: f64,
    /// Number of gene trees
    #[arg(long, default_value_t = 10)]
    count: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Newick lines or a CSV of distance vectors
    #[arg(long, value_enum, default_value = "newick")]
    format: GeneFormat,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ExperimentArgs {
    /// TOML config file
    #[arg(long)]
    config: PathBuf,
    /// Overrides `master_seed` from the config
    #[arg(long)]
    seed: Option<u64>,
    /// Per-trial records CSV (stdout if omitted)
    #[arg(long)]
    output: Option<PathBuf>,
    /// Per-cell summary CSV
    #[arg(long)]
    summary: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct HausdorffArgs {
    /// Sample sizes
    #[arg(long, value_delimiter = ',', default_value = "2,3,4,5,6,7")]
    n: Vec<usize>,
    /// Dimensions
    #[arg(long, value_delimiter = ',', default_value = "2,3,4,5,6")]
    q: Vec<usize>,
    #[arg(long, default_value_t = 2000)]
    replicates: usize,
    /// Perturbations are uniform on [0, scale]^q
    #[arg(long, default_value_t = 0.01)]
    scale: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct MomentsArgs {
    /// Dimension of the normal vector
    #[arg(long)]
    q: usize,
    /// Monte-Carlo draws (at least 1000)
    #[arg(long, default_value_t = 100_000)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Failure probability for the stochastic safety bound
    #[arg(long, requires_all = ["sample_size", "w_min"])]
    eta: Option<f64>,
    /// Sample size for the stochastic safety bound
    #[arg(long, requires = "eta")]
    sample_size: Option<usize>,
    /// Minimum internal branch length for the stochastic safety bound
    #[arg(long, requires = "eta")]
    w_min: Option<f64>,
    #[arg(long)]
    output: Option<PathBuf>,
}

fn run(cli: Cli) -> anyhow::Result<()> {
    if let Some(threads) = cli.threads {
        if threads == 0 {
            return Err(UsageError::new("--threads must be positive").into());
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()?;
    }
    match cli.command {
        Command::Fw(a) => commands::fw(a),
        Command::Project(a) => commands::project(a),
        Command::Simulate(a) => commands::simulate(a),
        Command::Experiment(a) => commands::experiment(a, false),
        Command::SafetyDemo(a) => commands::experiment(a, true),
        Command::Hausdorff(a) => commands::hausdorff(a),
        Command::Moments(a) => commands::moments(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<UsageError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

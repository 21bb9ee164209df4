//! Command-line front end for the UVAA secure-communication simulator and
//! optimizer: scenario generation, optimization runs, solution evaluation,
//! beam-pattern export, the linear-array baseline and robustness studies.

pub mod commands;
pub mod formats;
pub mod manifest;
pub mod parallel;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Exit code classification: usage/validation problems exit 2, runtime
/// failures exit 3.
#[derive(Debug)]
pub enum CliError {
    Usage(anyhow::Error),
    Runtime(anyhow::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Runtime(_) => 3,
        }
    }

    pub fn message(&self) -> String {
        match self {
            CliError::Usage(e) | CliError::Runtime(e) => format!("{e:#}"),
        }
    }
}

pub type CliResult = Result<(), CliError>;

pub(crate) fn usage(e: impl Into<anyhow::Error>) -> CliError {
    CliError::Usage(e.into())
}

pub(crate) fn runtime(e: impl Into<anyhow::Error>) -> CliError {
    CliError::Runtime(e.into())
}

#[derive(Debug, Parser)]
#[command(
    name = "uvaa",
    version,
    about = "Secure two-way UAV virtual antenna array simulator and optimizer"
)]
pub struct Cli {
    /// Worker threads for population evaluation (0 = all cores). Never
    /// affects results.
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a multi-objective optimization and export its archive.
    Optimize(OptimizeArgs),
    /// Evaluate one solution file against a scenario.
    Evaluate(EvaluateArgs),
    /// Export the sampled beam pattern of one UVAA of a solution.
    Pattern(PatternArgs),
    /// Monte Carlo robustness study of a fixed solution.
    Robustness(RobustnessArgs),
    /// Produce and evaluate the linear-antenna-array baseline.
    Baseline(BaselineArgs),
    /// Generate a random scenario file.
    GenScenario(GenScenarioArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algorithm {
    /// Enhanced optimizer (random-walk init, sorting evolution, integer
    /// update).
    MoaloRsi,
    /// Vanilla optimizer baseline.
    Moalo,
    /// Linear antenna array baseline (no search).
    Laa,
}

impl Algorithm {
    pub fn id(&self) -> &'static str {
        match self {
            Algorithm::MoaloRsi => "moalo-rsi",
            Algorithm::Moalo => "moalo",
            Algorithm::Laa => "laa",
        }
    }
}

#[derive(Debug, Args)]
pub struct OptimizeArgs {
    #[arg(long)]
    pub scenario: PathBuf,
    #[arg(long, value_enum, default_value_t = Algorithm::MoaloRsi)]
    pub algo: Algorithm,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Population size N.
    #[arg(long, default_value_t = 50)]
    pub pop: usize,
    /// Iteration budget.
    #[arg(long, default_value_t = 300)]
    pub iters: usize,
    #[arg(long, default_value_t = 0.9)]
    pub delta1: f64,
    #[arg(long, default_value_t = 0.9)]
    pub delta2: f64,
    #[arg(long, default_value_t = 0.9)]
    pub delta3: f64,
    /// Override the scenario's direction-grid step, degrees (0 = keep).
    #[arg(long, default_value_t = 0.0)]
    pub grid_deg: f64,
    /// Step size of the random-walk initialization, meters.
    #[arg(long, default_value_t = 5.0)]
    pub walk_step: f64,
    /// Output directory.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    #[arg(long)]
    pub scenario: PathBuf,
    #[arg(long)]
    pub solution: PathBuf,
    /// Optional output directory (evaluation.json + manifest.json).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = 0.0)]
    pub grid_deg: f64,
}

#[derive(Debug, Args)]
pub struct PatternArgs {
    #[arg(long)]
    pub scenario: PathBuf,
    #[arg(long)]
    pub solution: PathBuf,
    /// Which UVAA to export (1 or 2).
    #[arg(long, default_value_t = 1)]
    pub swarm: usize,
    #[arg(long, default_value_t = 0.0)]
    pub grid_deg: f64,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PerturbationKind {
    Phase,
    Csi,
    Jitter,
}

#[derive(Debug, Args)]
pub struct RobustnessArgs {
    #[arg(long)]
    pub scenario: PathBuf,
    #[arg(long)]
    pub solution: PathBuf,
    #[arg(long, value_enum)]
    pub kind: PerturbationKind,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// PSK codebook size for --kind csi.
    #[arg(long, default_value_t = 16)]
    pub codebook: u32,
    /// Maximum drift radius in meters for --kind jitter.
    #[arg(long, default_value_t = 1.0)]
    pub drift: f64,
    /// Clock bias coefficient of the phase-noise model.
    #[arg(long, default_value_t = 1e-10)]
    pub q1: f64,
    /// Clock drift coefficient of the phase-noise model.
    #[arg(long, default_value_t = 1e-12)]
    pub q2: f64,
    /// Synchronization interval of the phase-noise model, seconds.
    #[arg(long, default_value_t = 1e-3)]
    pub delta_t: f64,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct BaselineArgs {
    #[arg(long)]
    pub scenario: PathBuf,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct GenScenarioArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 16)]
    pub n_uav: usize,
    #[arg(long, default_value_t = 2)]
    pub n_known: usize,
    #[arg(long, default_value_t = 2)]
    pub n_unknown: usize,
    /// Output scenario file path.
    #[arg(long)]
    pub out: PathBuf,
}

/// Dispatch a parsed command line.
pub fn run(cli: Cli) -> CliResult {
    parallel::init_threads(cli.threads).map_err(runtime)?;
    match cli.command {
        Command::Optimize(args) => commands::optimize::run(args),
        Command::Evaluate(args) => commands::evaluate::run(args),
        Command::Pattern(args) => commands::pattern::run(args),
        Command::Robustness(args) => commands::robustness::run(args),
        Command::Baseline(args) => commands::baseline::run(args),
        Command::GenScenario(args) => commands::gen_scenario::run(args),
    }
}

//! `hqnn`: benchmark harness for the hybrid quantum-classical classifier.
//! Subcommands cover the whole workflow: synthesize a dataset, train either
//! model kind, evaluate or compare checkpoints, verify gradients, and
//! inspect circuits. Every command is deterministic given its config;
//! wall-clock fields are the only exception.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error,
//! 3 numeric failure (training divergence).

mod commands;
mod config;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hqnn_core::gradcheck::Fault;
use hqnn_core::HqnnError;

use config::{pick, require, DEFAULT_SEED};

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, bad config keys, unreadable or conflicting files.
    Usage(String),
    /// A check ran to completion and found the implementation wanting.
    Verification(String),
    /// Training produced non-finite numbers.
    Numeric(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Verification(_) => 1,
            CliError::Numeric(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) | CliError::Verification(msg) | CliError::Numeric(msg) => {
                write!(f, "{msg}")
            }
        }
    }
}

impl From<HqnnError> for CliError {
    fn from(err: HqnnError) -> Self {
        match err {
            HqnnError::Diverged { .. } => CliError::Numeric(err.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "hqnn",
    version,
    about = "Hybrid quantum-classical binary classifier benchmark",
    after_help = "Config file: JSON object with the same keys as the flags \
                  (snake_case); flags take precedence."
)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalArgs {
    /// JSON config file providing any of the command's keys
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Seed for every random draw the command makes [default: 7]
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Where to write the command's primary output
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Overwrite existing output files
    #[arg(long, global = true)]
    force: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Write a synthetic dataset
    Generate(GenerateArgs),
    /// Train a model and log per-epoch metrics
    Train(TrainArgs),
    /// Score a checkpoint on a dataset
    Evaluate(EvaluateArgs),
    /// Side-by-side metrics for a hybrid and a classical checkpoint
    Compare(CompareArgs),
    /// Check analytic gradients against finite differences
    Gradcheck(GradcheckArgs),
    /// Print a circuit and parameter accounting
    Inspect(InspectArgs),
}

#[derive(Args)]
struct GenerateArgs {
    /// Generator: chirp (images) or blobs (flat features) [default: chirp]
    #[arg(long)]
    kind: Option<String>,
    /// Samples per class [default: 1000]
    #[arg(long)]
    n: Option<usize>,
    /// Image side length, chirp only [default: 32]
    #[arg(long)]
    size: Option<usize>,
    /// Pixel noise standard deviation, chirp only [default: 0.1]
    #[arg(long)]
    noise: Option<f64>,
    /// Feature dimension, blobs only [default: 2]
    #[arg(long)]
    dim: Option<usize>,
    /// Distance between class means, blobs only [default: 6]
    #[arg(long)]
    separation: Option<f64>,
}

#[derive(Args)]
struct TrainArgs {
    /// Model kind: hybrid or classical [default: hybrid]
    #[arg(long)]
    kind: Option<String>,
    /// Dataset file written by `generate`
    #[arg(long)]
    dataset: Option<PathBuf>,
    /// Training epochs [default: 10]
    #[arg(long)]
    epochs: Option<usize>,
    /// Minibatch size [default: 32]
    #[arg(long)]
    batch_size: Option<usize>,
    /// Learning rate [default: 0.001]
    #[arg(long)]
    lr: Option<f64>,
    /// Optimizer: adam or sgd [default: adam]
    #[arg(long)]
    optimizer: Option<String>,
    /// Qubit count of the quantum head [default: 1]
    #[arg(long)]
    qubits: Option<usize>,
    /// Feature-map repetitions [default: 1]
    #[arg(long)]
    feature_map_reps: Option<usize>,
    /// Ansatz repetitions [default: 1]
    #[arg(long)]
    ansatz_reps: Option<usize>,
    /// Where the best checkpoint goes [default: model.ckpt]
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    /// Where the JSON-lines epoch log goes [default: metrics.jsonl]
    #[arg(long)]
    metrics: Option<PathBuf>,
}

#[derive(Args)]
struct EvaluateArgs {
    /// Checkpoint to score
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    /// Dataset to score on
    #[arg(long)]
    dataset: Option<PathBuf>,
}

#[derive(Args)]
struct CompareArgs {
    /// Hybrid checkpoint
    #[arg(long)]
    hybrid_checkpoint: Option<PathBuf>,
    /// Classical checkpoint
    #[arg(long)]
    classical_checkpoint: Option<PathBuf>,
    /// Hybrid training metrics log (for the runtime column)
    #[arg(long)]
    hybrid_metrics: Option<PathBuf>,
    /// Classical training metrics log (for the runtime column)
    #[arg(long)]
    classical_metrics: Option<PathBuf>,
    /// Held-out dataset both models are scored on
    #[arg(long)]
    dataset: Option<PathBuf>,
}

#[derive(Args)]
struct GradcheckArgs {
    /// Test fixture: distort analytic gradients (flip-ry-sign)
    #[arg(long, hide = true)]
    fault: Option<String>,
}

#[derive(Args)]
struct InspectArgs {
    /// Checkpoint to describe; omit to describe a fresh head circuit
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    /// Qubit count when no checkpoint is given [default: 1]
    #[arg(long)]
    qubits: Option<usize>,
    /// Feature-map repetitions when no checkpoint is given [default: 1]
    #[arg(long)]
    feature_map_reps: Option<usize>,
    /// Ansatz repetitions when no checkpoint is given [default: 1]
    #[arg(long)]
    ansatz_reps: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let g = &cli.global;
    match cli.command {
        Command::Generate(args) => {
            let file: config::GenerateFile = config::load_file(g.config.as_deref())?;
            let cfg = commands::GenerateConfig {
                kind: pick(args.kind, file.kind, "chirp".into()),
                n: pick(args.n, file.n, 1000),
                size: pick(args.size, file.size, 32),
                noise: pick(args.noise, file.noise, 0.1),
                dim: pick(args.dim, file.dim, 2),
                separation: pick(args.separation, file.separation, 6.0),
                seed: pick(g.seed, file.seed, DEFAULT_SEED),
                out: require(g.out.clone(), file.out, "out")?,
                force: g.force,
            };
            commands::cmd_generate(&cfg)
        }
        Command::Train(args) => {
            let file: config::TrainFile = config::load_file(g.config.as_deref())?;
            let optimizer = pick(args.optimizer, file.optimizer, "adam".into());
            let cfg = commands::TrainCliConfig {
                kind: pick(args.kind, file.kind, "hybrid".into()),
                dataset: require(args.dataset, file.dataset, "dataset")?,
                epochs: pick(args.epochs, file.epochs, 10),
                batch_size: pick(args.batch_size, file.batch_size, 32),
                lr: pick(args.lr, file.lr, 0.001),
                optimizer: config::parse_optimizer(&optimizer)?,
                qubits: pick(args.qubits, file.qubits, 1),
                feature_map_reps: pick(args.feature_map_reps, file.feature_map_reps, 1),
                ansatz_reps: pick(args.ansatz_reps, file.ansatz_reps, 1),
                checkpoint: pick(args.checkpoint, file.checkpoint, "model.ckpt".into()),
                metrics: pick(args.metrics, file.metrics, "metrics.jsonl".into()),
                seed: pick(g.seed, file.seed, DEFAULT_SEED),
                force: g.force,
            };
            commands::cmd_train(&cfg)
        }
        Command::Evaluate(args) => {
            let file: config::EvaluateFile = config::load_file(g.config.as_deref())?;
            let cfg = commands::EvaluateConfig {
                checkpoint: require(args.checkpoint, file.checkpoint, "checkpoint")?,
                dataset: require(args.dataset, file.dataset, "dataset")?,
                out: g.out.clone().or(file.out),
                force: g.force,
            };
            commands::cmd_evaluate(&cfg)
        }
        Command::Compare(args) => {
            let file: config::CompareFile = config::load_file(g.config.as_deref())?;
            let cfg = commands::CompareConfig {
                hybrid_checkpoint: require(
                    args.hybrid_checkpoint,
                    file.hybrid_checkpoint,
                    "hybrid_checkpoint",
                )?,
                classical_checkpoint: require(
                    args.classical_checkpoint,
                    file.classical_checkpoint,
                    "classical_checkpoint",
                )?,
                hybrid_metrics: require(
                    args.hybrid_metrics,
                    file.hybrid_metrics,
                    "hybrid_metrics",
                )?,
                classical_metrics: require(
                    args.classical_metrics,
                    file.classical_metrics,
                    "classical_metrics",
                )?,
                dataset: require(args.dataset, file.dataset, "dataset")?,
                out: g.out.clone().or(file.out),
                force: g.force,
            };
            commands::cmd_compare(&cfg)
        }
        Command::Gradcheck(args) => {
            let file: config::GradcheckFile = config::load_file(g.config.as_deref())?;
            let fault = match args.fault.as_deref() {
                None => Fault::None,
                Some("flip-ry-sign") => Fault::FlipRySign,
                Some(other) => {
                    return Err(CliError::Usage(format!("unknown fault '{other}'")));
                }
            };
            let cfg = commands::GradcheckConfig {
                seed: pick(g.seed, file.seed, DEFAULT_SEED),
                fault,
                out: g.out.clone().or(file.out),
                force: g.force,
            };
            commands::cmd_gradcheck(&cfg)
        }
        Command::Inspect(args) => {
            let file: config::InspectFile = config::load_file(g.config.as_deref())?;
            let cfg = commands::InspectConfig {
                checkpoint: args.checkpoint.or(file.checkpoint),
                qubits: pick(args.qubits, file.qubits, 1),
                feature_map_reps: pick(args.feature_map_reps, file.feature_map_reps, 1),
                ansatz_reps: pick(args.ansatz_reps, file.ansatz_reps, 1),
                out: g.out.clone().or(file.out),
                force: g.force,
            };
            commands::cmd_inspect(&cfg)
        }
    }
}

//! One function per subcommand. Each takes its fully resolved config and
//! returns `CliError` variants that map onto the documented exit codes.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use hqnn_core::checkpoint::load_checkpoint;
use hqnn_core::data::{gen_blobs, gen_chirp_images, read_dataset, split, write_dataset, Dataset};
use hqnn_core::gradcheck::{run_gradcheck, Fault, GradCheckReport};
use hqnn_core::hybrid::{EpochRecord, HybridConfig, Model, TrainConfig};
use hqnn_core::nn::BackboneSpec;
use hqnn_core::optim::OptimizerKind;
use hqnn_core::qnn::classifier_head;
use serde::Serialize;

use crate::config::guard_overwrite;
use crate::CliError;

fn open_dataset(path: &Path) -> Result<Dataset, CliError> {
    read_dataset(path)
        .map_err(|e| CliError::Usage(format!("cannot read dataset {}: {e}", path.display())))
}

fn open_checkpoint(path: &Path) -> Result<Model, CliError> {
    load_checkpoint(path)
        .map_err(|e| CliError::Usage(format!("cannot load checkpoint {}: {e}", path.display())))
}

pub struct GenerateConfig {
    pub kind: String,
    pub n: usize,
    pub size: usize,
    pub noise: f64,
    pub dim: usize,
    pub separation: f64,
    pub seed: u64,
    pub out: PathBuf,
    pub force: bool,
}

pub fn cmd_generate(cfg: &GenerateConfig) -> Result<(), CliError> {
    let ds = match cfg.kind.as_str() {
        "chirp" => gen_chirp_images(cfg.n, cfg.size, cfg.noise, cfg.seed)?,
        "blobs" => gen_blobs(cfg.n, cfg.dim, cfg.separation, cfg.seed)?,
        other => {
            return Err(CliError::Usage(format!(
                "unknown generator kind '{other}' (expected chirp or blobs)"
            )))
        }
    };
    guard_overwrite(&cfg.out, cfg.force)?;
    write_dataset(&ds, &cfg.out)?;
    println!(
        "wrote {}: {} samples, shape {}, class balance {}",
        cfg.out.display(),
        ds.len(),
        shape_label(&ds),
        balance_label(&ds),
    );
    Ok(())
}

fn shape_label(ds: &Dataset) -> String {
    let dims: Vec<String> = ds.samples().shape()[1..].iter().map(usize::to_string).collect();
    dims.join("x")
}

fn balance_label(ds: &Dataset) -> String {
    let mut counts = vec![0usize; usize::from(ds.class_count())];
    for &label in ds.labels() {
        counts[usize::from(label)] += 1;
    }
    let parts: Vec<String> = counts.iter().map(usize::to_string).collect();
    parts.join("/")
}

pub struct TrainCliConfig {
    pub kind: String,
    pub dataset: PathBuf,
    pub epochs: usize,
    pub batch_size: usize,
    pub lr: f64,
    pub optimizer: OptimizerKind,
    pub qubits: usize,
    pub feature_map_reps: usize,
    pub ansatz_reps: usize,
    pub checkpoint: PathBuf,
    pub metrics: PathBuf,
    pub seed: u64,
    pub force: bool,
}

/// Fraction of the dataset held out for validation, split with the run seed.
const VAL_FRACTION: f64 = 0.2;

pub fn cmd_train(cfg: &TrainCliConfig) -> Result<(), CliError> {
    let ds = open_dataset(&cfg.dataset)?;
    let (train, val) = split(&ds, VAL_FRACTION, cfg.seed)?;
    let mut model = build_model(cfg, &ds)?;
    guard_overwrite(&cfg.checkpoint, cfg.force)?;
    guard_overwrite(&cfg.metrics, cfg.force)?;

    let train_config = TrainConfig {
        epochs: cfg.epochs,
        batch_size: cfg.batch_size,
        learning_rate: cfg.lr,
        optimizer: cfg.optimizer,
        seed: cfg.seed,
        checkpoint_path: cfg.checkpoint.clone(),
    };
    let records = model.fit(&train, &val, &train_config)?;
    write_metrics(&cfg.metrics, &records)?;

    for r in &records {
        println!(
            "epoch {}: train_loss {:.4}, val_loss {:.4}, val_accuracy {:.4}, {:.1}s",
            r.epoch, r.train_loss, r.val_loss, r.val_accuracy, r.elapsed_seconds
        );
    }
    let best = best_epoch(&records);
    println!(
        "best epoch {}: val_accuracy {:.4} (checkpoint {}, metrics {})",
        best.epoch,
        best.val_accuracy,
        cfg.checkpoint.display(),
        cfg.metrics.display(),
    );
    Ok(())
}

/// Image datasets (rank 4, NCHW) get the small convolutional backbone, flat
/// feature datasets (rank 2) a single dense projection. The hybrid backbone
/// is as wide as the qubit register; the classical twin is fixed at width 1.
fn build_model(cfg: &TrainCliConfig, ds: &Dataset) -> Result<Model, CliError> {
    let spec_for = |out_features: usize| match ds.samples().rank() {
        4 => Ok(BackboneSpec::Conv { out_features }),
        2 => Ok(BackboneSpec::Identity {
            input_dim: ds.samples().shape()[1],
            out_features,
        }),
        r => Err(CliError::Usage(format!(
            "dataset samples have rank {r}, expected 2 (features) or 4 (images)"
        ))),
    };
    match cfg.kind.as_str() {
        "hybrid" => {
            let head = HybridConfig {
                num_qubits: cfg.qubits,
                feature_map_reps: cfg.feature_map_reps,
                ansatz_reps: cfg.ansatz_reps,
                class_count: ds.class_count(),
            };
            Ok(Model::new_hybrid(&spec_for(cfg.qubits)?, head, cfg.seed)?)
        }
        "classical" => Ok(Model::new_classical(&spec_for(1)?, cfg.seed)?),
        other => Err(CliError::Usage(format!(
            "unknown model kind '{other}' (expected hybrid or classical)"
        ))),
    }
}

fn write_metrics(path: &Path, records: &[EpochRecord]) -> Result<(), CliError> {
    let mut text = String::new();
    for r in records {
        let line = serde_json::to_string(r).expect("epoch records serialize");
        text.push_str(&line);
        text.push('\n');
    }
    std::fs::write(path, text)
        .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))
}

/// First record with the maximum validation accuracy, matching the strict
/// improvement rule the checkpointing uses.
fn best_epoch(records: &[EpochRecord]) -> &EpochRecord {
    let mut best = &records[0];
    for r in records {
        if r.val_accuracy > best.val_accuracy {
            best = r;
        }
    }
    best
}

pub struct EvaluateConfig {
    pub checkpoint: PathBuf,
    pub dataset: PathBuf,
    pub out: Option<PathBuf>,
    pub force: bool,
}

pub fn cmd_evaluate(cfg: &EvaluateConfig) -> Result<(), CliError> {
    let mut model = open_checkpoint(&cfg.checkpoint)?;
    let ds = open_dataset(&cfg.dataset)?;
    let report = model.evaluate(&ds)?;
    println!("kind: {}", model.kind_name());
    println!("accuracy: {:.4}", report.accuracy);
    println!("loss: {:.4}", report.loss);
    println!("model_size_bytes: {}", report.model_size_bytes);
    if let Some(out) = &cfg.out {
        guard_overwrite(out, cfg.force)?;
        let json = serde_json::to_string_pretty(&report).expect("report serializes");
        std::fs::write(out, json)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", out.display())))?;
    }
    Ok(())
}

pub struct CompareConfig {
    pub hybrid_checkpoint: PathBuf,
    pub classical_checkpoint: PathBuf,
    pub hybrid_metrics: PathBuf,
    pub classical_metrics: PathBuf,
    pub dataset: PathBuf,
    pub out: Option<PathBuf>,
    pub force: bool,
}

/// One comparison column; values are pre-rounded so the JSON document and
/// the text table show the same numbers.
#[derive(Debug, Serialize)]
pub struct ModelMetrics {
    pub accuracy_percent: f64,
    pub runtime_seconds: f64,
    pub model_size_bytes: u64,
}

#[derive(Debug, Serialize)]
pub struct CompareReport {
    pub hybrid: ModelMetrics,
    pub classical: ModelMetrics,
}

pub fn cmd_compare(cfg: &CompareConfig) -> Result<(), CliError> {
    let ds = open_dataset(&cfg.dataset)?;
    let hybrid = column(&cfg.hybrid_checkpoint, &cfg.hybrid_metrics, &ds)?;
    let classical = column(&cfg.classical_checkpoint, &cfg.classical_metrics, &ds)?;
    let report = CompareReport { hybrid, classical };

    let table = render_table(&report);
    print!("{table}");
    let json = serde_json::to_string_pretty(&report).expect("report serializes");
    match &cfg.out {
        Some(out) => {
            guard_overwrite(out, cfg.force)?;
            std::fs::write(out, &json)
                .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", out.display())))?;
        }
        None => println!("\n{json}"),
    }
    Ok(())
}

fn column(checkpoint: &Path, metrics: &Path, ds: &Dataset) -> Result<ModelMetrics, CliError> {
    let mut model = open_checkpoint(checkpoint)?;
    let report = model.evaluate(ds)?;
    Ok(ModelMetrics {
        accuracy_percent: round2(report.accuracy * 100.0),
        runtime_seconds: round2(read_runtime(metrics)?),
        model_size_bytes: report.model_size_bytes,
    })
}

/// Total training wall-clock: the sum of the per-epoch times in a metrics
/// log written by `train`.
fn read_runtime(path: &Path) -> Result<f64, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read metrics {}: {e}", path.display())))?;
    let mut total = 0.0;
    for (i, line) in text.lines().enumerate() {
        let record: EpochRecord = serde_json::from_str(line).map_err(|e| {
            CliError::Usage(format!("bad metrics line {} in {}: {e}", i + 1, path.display()))
        })?;
        total += record.elapsed_seconds;
    }
    Ok(total)
}

fn round2(v: f64) -> f64 {
    (v * 100.0).round() / 100.0
}

fn render_table(report: &CompareReport) -> String {
    let rows = [
        (
            "Accuracy (%)",
            format!("{:.2}", report.hybrid.accuracy_percent),
            format!("{:.2}", report.classical.accuracy_percent),
        ),
        (
            "Runtime (sec)",
            format!("{:.2}", report.hybrid.runtime_seconds),
            format!("{:.2}", report.classical.runtime_seconds),
        ),
        (
            "Model Size (bytes)",
            report.hybrid.model_size_bytes.to_string(),
            report.classical.model_size_bytes.to_string(),
        ),
    ];
    let mut out = String::new();
    let _ = writeln!(out, "{:<20}{:>12}{:>12}", "Metric", "Hybrid", "Classical");
    for (label, hybrid, classical) in rows {
        let _ = writeln!(out, "{label:<20}{hybrid:>12}{classical:>12}");
    }
    out
}

pub struct GradcheckConfig {
    pub seed: u64,
    pub fault: Fault,
    pub out: Option<PathBuf>,
    pub force: bool,
}

pub fn cmd_gradcheck(cfg: &GradcheckConfig) -> Result<(), CliError> {
    let report = run_gradcheck(cfg.seed, cfg.fault)?;
    let text = render_gradcheck(&report);
    print!("{text}");
    if let Some(out) = &cfg.out {
        guard_overwrite(out, cfg.force)?;
        std::fs::write(out, &text)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", out.display())))?;
    }
    if report.all_passed() {
        Ok(())
    } else {
        let names: Vec<&str> = report.failing().map(|c| c.name).collect();
        Err(CliError::Verification(format!(
            "gradient check failed: {}",
            names.join(", ")
        )))
    }
}

fn render_gradcheck(report: &GradCheckReport) -> String {
    let mut out = String::new();
    for c in &report.components {
        let verdict = if c.passed { "PASS" } else { "FAIL" };
        let _ = writeln!(
            out,
            "{:<20} configs {:>3}  values {:>6}  max_abs_error {:.3e}  ratio {:.3}  {verdict}",
            c.name, c.configs, c.values, c.max_abs_error, c.error_ratio,
        );
    }
    out
}

pub struct InspectConfig {
    pub checkpoint: Option<PathBuf>,
    pub qubits: usize,
    pub feature_map_reps: usize,
    pub ansatz_reps: usize,
    pub out: Option<PathBuf>,
    pub force: bool,
}

pub fn cmd_inspect(cfg: &InspectConfig) -> Result<(), CliError> {
    let text = match &cfg.checkpoint {
        Some(path) => describe_model(&open_checkpoint(path)?),
        None => describe_head(cfg)?,
    };
    print!("{text}");
    if let Some(out) = &cfg.out {
        guard_overwrite(out, cfg.force)?;
        std::fs::write(out, &text)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", out.display())))?;
    }
    Ok(())
}

fn describe_model(model: &Model) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "kind: {}", model.kind_name());
    if let Model::Hybrid(m) = model {
        let _ = writeln!(out, "circuit:");
        let _ = write!(out, "{}", m.qnn().circuit());
        let _ = writeln!(out, "input parameters: {}", m.qnn().num_inputs());
    }
    let _ = writeln!(out, "quantum weights: {}", model.quantum_weight_count());
    let _ = writeln!(out, "layers:");
    let mut classical = 0usize;
    for (name, params) in model.layer_summaries() {
        let _ = writeln!(out, "  {name}: {params} params");
        classical += params;
    }
    let _ = writeln!(out, "classical parameters: {classical}");
    let _ = writeln!(out, "total trainable parameters: {}", model.param_count());
    out
}

/// Circuit-only view for a head that exists as a spec rather than a
/// trained checkpoint.
fn describe_head(cfg: &InspectConfig) -> Result<String, CliError> {
    let qnn = classifier_head(cfg.qubits, cfg.feature_map_reps, cfg.ansatz_reps)?;
    let mut out = String::new();
    let _ = writeln!(out, "kind: circuit");
    let _ = writeln!(out, "circuit:");
    let _ = write!(out, "{}", qnn.circuit());
    let _ = writeln!(out, "input parameters: {}", qnn.num_inputs());
    let _ = writeln!(out, "quantum weights: {}", qnn.num_weights());
    Ok(out)
}

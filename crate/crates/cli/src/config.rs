//! Config resolution: JSON file keys merged with command-line flags.
//! Flags win over file values; anything left unset falls back to the
//! documented default. Unknown file keys are rejected.

use std::path::{Path, PathBuf};

use hqnn_core::optim::OptimizerKind;
use serde::de::DeserializeOwned;
use serde::Deserialize;

use crate::CliError;

/// Loads and parses a command's JSON config file, or yields the all-unset
/// default when no file was given.
pub fn load_file<T: DeserializeOwned + Default>(path: Option<&Path>) -> Result<T, CliError> {
    let Some(path) = path else {
        return Ok(T::default());
    };
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("bad config {}: {e}", path.display())))
}

/// Flag value if present, else file value, else the default.
pub fn pick<T>(flag: Option<T>, file: Option<T>, default: T) -> T {
    flag.or(file).unwrap_or(default)
}

/// Like `pick` but with no default; the key is mandatory.
pub fn require<T>(flag: Option<T>, file: Option<T>, key: &str) -> Result<T, CliError> {
    flag.or(file)
        .ok_or_else(|| CliError::Usage(format!("missing required key '{key}'")))
}

pub fn parse_optimizer(name: &str) -> Result<OptimizerKind, CliError> {
    match name {
        "adam" => Ok(OptimizerKind::Adam),
        "sgd" => Ok(OptimizerKind::Sgd),
        other => Err(CliError::Usage(format!(
            "unknown optimizer '{other}' (expected adam or sgd)"
        ))),
    }
}

/// Refuses to overwrite an existing file unless `--force` was given.
pub fn guard_overwrite(path: &Path, force: bool) -> Result<(), CliError> {
    if path.exists() && !force {
        return Err(CliError::Usage(format!(
            "{} already exists; pass --force to overwrite",
            path.display()
        )));
    }
    Ok(())
}

pub const DEFAULT_SEED: u64 = 7;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenerateFile {
    pub kind: Option<String>,
    pub n: Option<usize>,
    pub size: Option<usize>,
    pub noise: Option<f64>,
    pub dim: Option<usize>,
    pub separation: Option<f64>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrainFile {
    pub kind: Option<String>,
    pub dataset: Option<PathBuf>,
    pub epochs: Option<usize>,
    pub batch_size: Option<usize>,
    pub lr: Option<f64>,
    pub optimizer: Option<String>,
    pub qubits: Option<usize>,
    pub feature_map_reps: Option<usize>,
    pub ansatz_reps: Option<usize>,
    pub checkpoint: Option<PathBuf>,
    pub metrics: Option<PathBuf>,
    pub seed: Option<u64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvaluateFile {
    pub checkpoint: Option<PathBuf>,
    pub dataset: Option<PathBuf>,
    pub out: Option<PathBuf>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompareFile {
    pub hybrid_checkpoint: Option<PathBuf>,
    pub classical_checkpoint: Option<PathBuf>,
    pub hybrid_metrics: Option<PathBuf>,
    pub classical_metrics: Option<PathBuf>,
    pub dataset: Option<PathBuf>,
    pub out: Option<PathBuf>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GradcheckFile {
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InspectFile {
    pub checkpoint: Option<PathBuf>,
    pub qubits: Option<usize>,
    pub feature_map_reps: Option<usize>,
    pub ansatz_reps: Option<usize>,
    pub out: Option<PathBuf>,
}

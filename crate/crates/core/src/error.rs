use thiserror::Error;

/// Errors produced by the simulation, model, and serialization layers.
#[derive(Debug, Error)]
pub enum HqnnError {
    /// Invalid configuration value (qubit count, class count, reps, ...).
    #[error("invalid configuration: {0}")]
    Config(String),

    /// Malformed circuit construction (qubit index out of range, ...).
    #[error("invalid circuit: {0}")]
    Circuit(String),

    /// Two circuits cannot be composed.
    #[error("cannot compose circuits: {0}")]
    Compose(String),

    /// Parameter binding failed (wrong count, unknown symbol, ...).
    #[error("cannot bind parameters: {0}")]
    Bind(String),

    /// Tensor or layer shape mismatch.
    #[error("shape mismatch: {0}")]
    Shape(String),

    /// Operation invoked in an invalid order (backward before forward, ...).
    #[error("invalid state: {0}")]
    State(String),

    /// Dataset construction or splitting failed.
    #[error("invalid data: {0}")]
    Data(String),

    /// Malformed binary payload. `offset` is the byte position of the
    /// first inconsistency.
    #[error("malformed file at byte {offset}: {msg}")]
    Format { offset: u64, msg: String },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    /// Training produced a non-finite loss.
    #[error("training diverged at epoch {epoch}: {msg}")]
    Diverged { epoch: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, HqnnError>;

//! Hybrid quantum-classical binary classification.
//!
//! The crate simulates parameterized quantum circuits exactly on a
//! statevector, differentiates them with the parameter-shift rule, and
//! couples them to a small hand-rolled convolutional network so the whole
//! classifier trains end to end with one optimizer. Synthetic data
//! generators, binary dataset and checkpoint containers, and a
//! finite-difference gradient audit round out the toolkit.
//!
//! Conventions used throughout:
//!
//! * Qubit `j` owns bit `j` of an outcome index (little-endian).
//! * Training always uses exact probabilities; shot sampling is an
//!   inference-time feature.
//! * Every random draw flows from a caller-supplied seed.

pub mod checkpoint;
pub mod circuits;
pub mod data;
pub mod error;
pub mod gradcheck;
pub mod hybrid;
pub mod nn;
pub mod optim;
pub mod qnn;
pub mod statevec;
pub mod tensor;

pub use error::{HqnnError, Result};

//! Flat-parameter optimizers: Adam with bias-corrected moments and plain SGD.

use serde::{Deserialize, Serialize};

/// Optimizer selector as it appears in training configs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OptimizerKind {
    Adam,
    Sgd,
}

impl OptimizerKind {
    pub fn build(self, learning_rate: f64, param_count: usize) -> Optimizer {
        match self {
            OptimizerKind::Adam => Optimizer::adam(learning_rate, param_count),
            OptimizerKind::Sgd => Optimizer::sgd(learning_rate),
        }
    }
}

#[derive(Debug, Clone)]
pub struct AdamState {
    learning_rate: f64,
    beta1: f64,
    beta2: f64,
    epsilon: f64,
    step: u64,
    m: Vec<f64>,
    v: Vec<f64>,
}

#[derive(Debug, Clone)]
pub enum Optimizer {
    Sgd { learning_rate: f64 },
    Adam(AdamState),
}

impl Optimizer {
    pub fn sgd(learning_rate: f64) -> Self {
        Optimizer::Sgd { learning_rate }
    }

    /// Adam with the standard defaults β1 = 0.9, β2 = 0.999, ε = 1e-8.
    pub fn adam(learning_rate: f64, param_count: usize) -> Self {
        Optimizer::Adam(AdamState {
            learning_rate,
            beta1: 0.9,
            beta2: 0.999,
            epsilon: 1e-8,
            step: 0,
            m: vec![0.0; param_count],
            v: vec![0.0; param_count],
        })
    }

    /// One in-place update. Lengths must match the optimizer's state.
    pub fn step(&mut self, params: &mut [f64], grads: &[f64]) {
        assert_eq!(params.len(), grads.len(), "parameter/gradient length mismatch");
        match self {
            Optimizer::Sgd { learning_rate } => {
                for (p, &g) in params.iter_mut().zip(grads) {
                    *p -= *learning_rate * g;
                }
            }
            Optimizer::Adam(state) => {
                assert_eq!(params.len(), state.m.len(), "optimizer built for another model");
                state.step += 1;
                let bc1 = 1.0 - state.beta1.powi(state.step as i32);
                let bc2 = 1.0 - state.beta2.powi(state.step as i32);
                for i in 0..params.len() {
                    let g = grads[i];
                    state.m[i] = state.beta1 * state.m[i] + (1.0 - state.beta1) * g;
                    state.v[i] = state.beta2 * state.v[i] + (1.0 - state.beta2) * g * g;
                    let m_hat = state.m[i] / bc1;
                    let v_hat = state.v[i] / bc2;
                    params[i] -= state.learning_rate * m_hat / (v_hat.sqrt() + state.epsilon);
                }
            }
        }
    }
}

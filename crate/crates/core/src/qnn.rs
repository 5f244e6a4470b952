//! Sampler quantum neural network: exact forward distribution over the 2^n
//! measurement outcomes and analytic parameter-shift jacobians.
//!
//! Training always runs on exact probabilities; shot sampling exists for
//! inference and demonstrations only, so gradient checks stay deterministic.

use std::collections::HashMap;
use std::f64::consts::FRAC_PI_2;

use crate::circuits::ParameterizedCircuit;
use crate::error::{HqnnError, Result};
use crate::statevec::{Gate, OutcomeDistribution, Statevector};

/// Dense row-major matrix of outcome-probability derivatives,
/// `[output_dim x num_params]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Jacobian {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Jacobian {
    fn zeros(rows: usize, cols: usize) -> Self {
        Jacobian { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[row * self.cols + col]
    }

    fn add(&mut self, row: usize, col: usize, value: f64) {
        self.data[row * self.cols + col] += value;
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    /// Vector-jacobian product: `out[c] = Σ_r cotangent[r] * J[r][c]`.
    /// This is the backpropagation contraction through the QNN.
    pub fn vjp(&self, cotangent: &[f64]) -> Vec<f64> {
        assert_eq!(cotangent.len(), self.rows, "cotangent length mismatch");
        let mut out = vec![0.0; self.cols];
        for (r, &w) in cotangent.iter().enumerate() {
            for (c, o) in out.iter_mut().enumerate() {
                *o += w * self.data[r * self.cols + c];
            }
        }
        out
    }
}

/// Derivatives of every outcome probability with respect to every input and
/// weight parameter. Because probabilities sum to 1, each column sums to 0.
#[derive(Debug, Clone)]
pub struct QnnGradients {
    pub input_jacobian: Jacobian,
    pub weight_jacobian: Jacobian,
}

/// Parameterized circuit packaged as a network layer: inputs and weights in,
/// outcome distribution out.
#[derive(Debug, Clone)]
pub struct SamplerQnn {
    circuit: ParameterizedCircuit,
}

impl SamplerQnn {
    pub fn new(circuit: ParameterizedCircuit) -> Self {
        SamplerQnn { circuit }
    }

    pub fn circuit(&self) -> &ParameterizedCircuit {
        &self.circuit
    }

    pub fn num_inputs(&self) -> usize {
        self.circuit.input_params().len()
    }

    pub fn num_weights(&self) -> usize {
        self.circuit.weight_params().len()
    }

    pub fn num_qubits(&self) -> usize {
        self.circuit.num_qubits()
    }

    pub fn output_dim(&self) -> usize {
        1 << self.circuit.num_qubits()
    }

    /// Exact outcome distribution: bind, run from |0...0>, square amplitudes.
    pub fn forward(&self, inputs: &[f64], weights: &[f64]) -> Result<OutcomeDistribution> {
        let gates = self.circuit.bind(inputs, weights)?;
        let mut sv = Statevector::zero(self.circuit.num_qubits())?;
        sv.run_circuit(&gates)?;
        Ok(sv.probabilities())
    }

    /// Empirical frequencies from `shots` samples. The largest bucket absorbs
    /// the floating-point residual so the frequencies sum to exactly 1.
    pub fn forward_sampled(
        &self,
        inputs: &[f64],
        weights: &[f64],
        shots: u64,
        seed: u64,
    ) -> Result<OutcomeDistribution> {
        if shots == 0 {
            return Err(HqnnError::Config("shot count must be positive".into()));
        }
        let gates = self.circuit.bind(inputs, weights)?;
        let mut sv = Statevector::zero(self.circuit.num_qubits())?;
        sv.run_circuit(&gates)?;
        let counts = sv.sample_counts(shots, seed);
        let mut freqs = vec![0.0; self.output_dim()];
        for (&outcome, &count) in &counts {
            freqs[outcome] = count as f64 / shots as f64;
        }
        let last = *counts
            .keys()
            .next_back()
            .expect("shots >= 1 yields at least one outcome");
        // Per-bucket rounding can leave the naive frequencies summing a hair
        // off 1.0. Rebuild them against the running partial sum P instead:
        // each bucket is capped at fl(1 - P) (a no-op for realistic shot
        // counts) and the last sampled bucket takes fl(1 - P) outright.
        // fl(P + fl(1 - P)) == 1.0 for every P in [0, 1], so summing the
        // result in index order yields exactly 1.0.
        let mut partial = 0.0f64;
        for (i, f) in freqs.iter_mut().enumerate().take(last + 1) {
            let headroom = 1.0 - partial;
            if i == last || *f > headroom {
                *f = headroom;
            }
            partial += *f;
        }
        Ok(OutcomeDistribution::new(freqs))
    }

    /// Parameter-shift jacobians, exact for circuits built from
    /// {H, RY, RZ, CNOT}: for a gate angle `a = c*p + b`, the gate-level
    /// derivative is `[P(a + π/2) - P(a - π/2)] / 2` and the derivative with
    /// respect to `p` accumulates `c` times that over every gate referencing
    /// `p`.
    pub fn backward(&self, inputs: &[f64], weights: &[f64]) -> Result<QnnGradients> {
        let gates = self.circuit.bind(inputs, weights)?;
        let dim = self.output_dim();
        let mut grads = QnnGradients {
            input_jacobian: Jacobian::zeros(dim, self.num_inputs()),
            weight_jacobian: Jacobian::zeros(dim, self.num_weights()),
        };
        let mut columns: HashMap<&str, (bool, usize)> = HashMap::new();
        for (i, sym) in self.circuit.input_params().iter().enumerate() {
            columns.insert(sym, (true, i));
        }
        for (j, sym) in self.circuit.weight_params().iter().enumerate() {
            columns.insert(sym, (false, j));
        }
        // bind emits exactly one gate per op, so op index == gate index.
        for (idx, op) in self.circuit.ops().iter().enumerate() {
            let Some(expr) = op.expr.as_ref() else { continue };
            let Some(sym) = expr.parameter_id() else { continue };
            let &(is_input, col) = columns.get(sym).expect("bind validated symbols");
            let plus = self.shifted_probabilities(&gates, idx, FRAC_PI_2)?;
            let minus = self.shifted_probabilities(&gates, idx, -FRAC_PI_2)?;
            for k in 0..dim {
                let gate_grad = (plus[k] - minus[k]) / 2.0;
                let jac = if is_input {
                    &mut grads.input_jacobian
                } else {
                    &mut grads.weight_jacobian
                };
                jac.add(k, col, expr.coefficient() * gate_grad);
            }
        }
        Ok(grads)
    }

    fn shifted_probabilities(&self, gates: &[Gate], idx: usize, delta: f64) -> Result<Vec<f64>> {
        let mut shifted = gates.to_vec();
        match &mut shifted[idx] {
            Gate::Ry { angle, .. } | Gate::Rz { angle, .. } => *angle += delta,
            other => unreachable!("parameterized op bound to non-rotation gate {other:?}"),
        }
        let mut sv = Statevector::zero(self.circuit.num_qubits())?;
        sv.run_circuit(&shifted)?;
        Ok(sv.probabilities().into_vec())
    }
}

/// The one-qubit classifier head: Z feature map composed with a
/// real-amplitudes ansatz, generalized to `num_qubits` features.
pub fn classifier_head(
    num_qubits: usize,
    feature_map_reps: usize,
    ansatz_reps: usize,
) -> Result<SamplerQnn> {
    let fm = crate::circuits::z_feature_map(num_qubits, feature_map_reps)?;
    let ansatz = crate::circuits::real_amplitudes(num_qubits, ansatz_reps)?;
    Ok(SamplerQnn::new(fm.compose(&ansatz)?))
}

//! Dense statevector simulation of small quantum circuits.
//!
//! Outcome indices are little-endian: bit `j` of an outcome index is the
//! measured value of qubit `j`. Gate conventions are pinned here:
//!
//! * `H`      = (1/sqrt 2) [[1, 1], [1, -1]]
//! * `RY(t)`  = [[cos(t/2), -sin(t/2)], [sin(t/2), cos(t/2)]]
//! * `RZ(t)`  = diag(e^{-i t/2}, e^{+i t/2})
//! * `CNOT`   flips the target qubit when the control bit is 1
//!
//! Global phase is never normalized away; every observable quantity
//! (probabilities, samples) is phase-insensitive.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::error::{HqnnError, Result};

/// Dense simulation is capped at 20 qubits (16 MiB of amplitudes).
pub const MAX_QUBITS: usize = 20;

/// One concrete gate, ready to apply to a state.
#[derive(Debug, Clone, PartialEq)]
pub enum Gate {
    H { target: usize },
    Ry { target: usize, angle: f64 },
    Rz { target: usize, angle: f64 },
    Cnot { control: usize, target: usize },
}

impl Gate {
    /// Largest qubit index the gate touches.
    pub fn max_qubit(&self) -> usize {
        match *self {
            Gate::H { target } | Gate::Ry { target, .. } | Gate::Rz { target, .. } => target,
            Gate::Cnot { control, target } => control.max(target),
        }
    }
}

/// Probability vector over the 2^n measurement outcomes.
#[derive(Debug, Clone, PartialEq)]
pub struct OutcomeDistribution {
    probs: Vec<f64>,
}

impl OutcomeDistribution {
    pub(crate) fn new(probs: Vec<f64>) -> Self {
        OutcomeDistribution { probs }
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.probs
    }
}

/// Pure n-qubit state: 2^n complex amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct Statevector {
    num_qubits: usize,
    amps: Vec<Complex64>,
}

impl Statevector {
    /// The all-zeros basis state |0...0>.
    pub fn zero(num_qubits: usize) -> Result<Self> {
        if num_qubits == 0 || num_qubits > MAX_QUBITS {
            return Err(HqnnError::Config(format!(
                "qubit count must be in 1..={MAX_QUBITS}, got {num_qubits}"
            )));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << num_qubits];
        amps[0] = Complex64::new(1.0, 0.0);
        Ok(Statevector { num_qubits, amps })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    fn check_qubit(&self, q: usize) -> Result<()> {
        if q >= self.num_qubits {
            return Err(HqnnError::Circuit(format!(
                "qubit index {q} out of range for {}-qubit state",
                self.num_qubits
            )));
        }
        Ok(())
    }

    /// Applies one gate in place.
    pub fn apply_gate(&mut self, gate: &Gate) -> Result<()> {
        match *gate {
            Gate::H { target } => {
                self.check_qubit(target)?;
                let f = std::f64::consts::FRAC_1_SQRT_2;
                self.apply_single(target, |a0, a1| (f * (a0 + a1), f * (a0 - a1)));
            }
            Gate::Ry { target, angle } => {
                self.check_qubit(target)?;
                let (s, c) = (angle / 2.0).sin_cos();
                self.apply_single(target, |a0, a1| (c * a0 - s * a1, s * a0 + c * a1));
            }
            Gate::Rz { target, angle } => {
                self.check_qubit(target)?;
                let e0 = Complex64::from_polar(1.0, -angle / 2.0);
                let e1 = Complex64::from_polar(1.0, angle / 2.0);
                self.apply_single(target, |a0, a1| (e0 * a0, e1 * a1));
            }
            Gate::Cnot { control, target } => {
                self.check_qubit(control)?;
                self.check_qubit(target)?;
                if control == target {
                    return Err(HqnnError::Circuit(format!(
                        "CNOT control and target coincide at qubit {control}"
                    )));
                }
                let cm = 1usize << control;
                let tm = 1usize << target;
                for i in 0..self.amps.len() {
                    if i & cm != 0 && i & tm == 0 {
                        self.amps.swap(i, i | tm);
                    }
                }
            }
        }
        Ok(())
    }

    /// Applies a 2x2 map to every amplitude pair split by the target bit.
    fn apply_single<F>(&mut self, target: usize, f: F)
    where
        F: Fn(Complex64, Complex64) -> (Complex64, Complex64),
    {
        let tm = 1usize << target;
        for i in 0..self.amps.len() {
            if i & tm == 0 {
                let j = i | tm;
                let (n0, n1) = f(self.amps[i], self.amps[j]);
                self.amps[i] = n0;
                self.amps[j] = n1;
            }
        }
    }

    /// Left-fold of `apply_gate` over the sequence.
    pub fn run_circuit(&mut self, gates: &[Gate]) -> Result<()> {
        for gate in gates {
            self.apply_gate(gate)?;
        }
        Ok(())
    }

    /// |amplitude|^2 per outcome.
    pub fn probabilities(&self) -> OutcomeDistribution {
        OutcomeDistribution::new(self.amps.iter().map(|a| a.norm_sqr()).collect())
    }

    /// Draws `shots` i.i.d. outcomes from `probabilities`; deterministic per seed.
    pub fn sample_counts(&self, shots: u64, seed: u64) -> BTreeMap<usize, u64> {
        let probs = self.probabilities();
        let mut cumulative = Vec::with_capacity(probs.len());
        let mut acc = 0.0;
        for &p in probs.probs() {
            acc += p;
            cumulative.push(acc);
        }
        // Guards the top bucket against the cumulative sum landing below 1.
        if let Some(last) = cumulative.last_mut() {
            *last = f64::max(*last, 1.0);
        }
        let mut rng = StdRng::seed_from_u64(seed);
        let mut counts = BTreeMap::new();
        for _ in 0..shots {
            let r: f64 = rng.gen();
            let outcome = cumulative.partition_point(|&c| c <= r);
            *counts.entry(outcome.min(probs.len() - 1)).or_insert(0) += 1;
        }
        counts
    }
}

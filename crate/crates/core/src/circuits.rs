//! Symbolic parameterized circuits and the two constructors the models use:
//! a Z feature map for data encoding and a real-amplitudes ansatz for the
//! trainable head.
//!
//! Parameters are named symbols split into input parameters (`x_i`, bound to
//! classical features) and weight parameters (`θ_j`, optimized during
//! training). Gate angles are linear expressions `coefficient * value +
//! offset` so the feature map's doubled angle survives into the chain rule.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::error::{HqnnError, Result};
use crate::statevec::{Gate, MAX_QUBITS};

/// Gate vocabulary of the circuit IR. `Ry`/`Rz` carry an angle expression,
/// `H`/`Cnot` never do.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GateKind {
    H,
    Ry,
    Rz,
    Cnot,
}

/// Linear angle expression `coefficient * value(parameter_id) + offset`.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamExpr {
    parameter_id: Option<String>,
    coefficient: f64,
    offset: f64,
}

impl ParamExpr {
    /// Expression referencing one named parameter.
    pub fn with_param(id: impl Into<String>, coefficient: f64, offset: f64) -> Result<Self> {
        if coefficient == 0.0 {
            return Err(HqnnError::Circuit(
                "parameterized angle expression needs a nonzero coefficient".into(),
            ));
        }
        Ok(ParamExpr {
            parameter_id: Some(id.into()),
            coefficient,
            offset,
        })
    }

    /// Constant angle.
    pub fn constant(offset: f64) -> Self {
        ParamExpr {
            parameter_id: None,
            coefficient: 0.0,
            offset,
        }
    }

    pub fn parameter_id(&self) -> Option<&str> {
        self.parameter_id.as_deref()
    }

    pub fn coefficient(&self) -> f64 {
        self.coefficient
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    /// Angle for a concrete parameter value (constants ignore the value).
    pub fn evaluate(&self, value: f64) -> f64 {
        self.coefficient * value + self.offset
    }

    fn render(&self) -> String {
        match &self.parameter_id {
            None => format_angle(self.offset),
            Some(id) => {
                let mut s = if self.coefficient == 1.0 {
                    id.clone()
                } else {
                    format!("{}*{}", format_angle(self.coefficient), id)
                };
                if self.offset != 0.0 {
                    s.push_str(&format!(" + {}", format_angle(self.offset)));
                }
                s
            }
        }
    }
}

fn format_angle(v: f64) -> String {
    // Integral angles print without a trailing ".0" so `2*x_0` reads cleanly.
    if v == v.trunc() && v.abs() < 1e15 {
        format!("{}", v as i64)
    } else {
        format!("{v}")
    }
}

/// One gate slot in a circuit: kind, addressed qubits, optional angle.
#[derive(Debug, Clone, PartialEq)]
pub struct CircuitOp {
    pub kind: GateKind,
    pub target: usize,
    pub control: Option<usize>,
    pub expr: Option<ParamExpr>,
}

impl CircuitOp {
    pub fn h(target: usize) -> Self {
        CircuitOp { kind: GateKind::H, target, control: None, expr: None }
    }

    pub fn ry(target: usize, expr: ParamExpr) -> Self {
        CircuitOp { kind: GateKind::Ry, target, control: None, expr: Some(expr) }
    }

    pub fn rz(target: usize, expr: ParamExpr) -> Self {
        CircuitOp { kind: GateKind::Rz, target, control: None, expr: Some(expr) }
    }

    pub fn cnot(control: usize, target: usize) -> Self {
        CircuitOp { kind: GateKind::Cnot, target, control: Some(control), expr: None }
    }
}

/// Ordered gate list with named parameter slots.
#[derive(Debug, Clone, PartialEq)]
pub struct ParameterizedCircuit {
    num_qubits: usize,
    ops: Vec<CircuitOp>,
    input_params: Vec<String>,
    weight_params: Vec<String>,
}

impl ParameterizedCircuit {
    /// Validates and assembles a circuit. Every declared symbol must be used
    /// by at least one gate, every referenced symbol must be declared in
    /// exactly one of the two lists, and angle expressions appear exactly on
    /// rotation gates.
    pub fn new(
        num_qubits: usize,
        ops: Vec<CircuitOp>,
        input_params: Vec<String>,
        weight_params: Vec<String>,
    ) -> Result<Self> {
        if num_qubits == 0 || num_qubits > MAX_QUBITS {
            return Err(HqnnError::Config(format!(
                "qubit count must be in 1..={MAX_QUBITS}, got {num_qubits}"
            )));
        }
        let mut declared = HashSet::new();
        for sym in input_params.iter().chain(weight_params.iter()) {
            if !declared.insert(sym.as_str()) {
                return Err(HqnnError::Circuit(format!(
                    "parameter symbol declared twice: {sym}"
                )));
            }
        }
        let mut used = HashSet::new();
        for (idx, op) in ops.iter().enumerate() {
            if op.target >= num_qubits {
                return Err(HqnnError::Circuit(format!(
                    "op {idx}: target {} out of range for {num_qubits} qubits",
                    op.target
                )));
            }
            match op.kind {
                GateKind::Cnot => {
                    let control = op.control.ok_or_else(|| {
                        HqnnError::Circuit(format!("op {idx}: CNOT without a control"))
                    })?;
                    if control >= num_qubits {
                        return Err(HqnnError::Circuit(format!(
                            "op {idx}: control {control} out of range for {num_qubits} qubits"
                        )));
                    }
                    if control == op.target {
                        return Err(HqnnError::Circuit(format!(
                            "op {idx}: CNOT control equals target"
                        )));
                    }
                }
                _ if op.control.is_some() => {
                    return Err(HqnnError::Circuit(format!(
                        "op {idx}: control on a non-CNOT gate"
                    )));
                }
                _ => {}
            }
            match op.kind {
                GateKind::Ry | GateKind::Rz => {
                    let expr = op.expr.as_ref().ok_or_else(|| {
                        HqnnError::Circuit(format!("op {idx}: rotation without an angle"))
                    })?;
                    if let Some(id) = expr.parameter_id() {
                        if !declared.contains(id) {
                            return Err(HqnnError::Circuit(format!(
                                "op {idx}: undeclared parameter {id}"
                            )));
                        }
                        used.insert(id.to_string());
                    }
                }
                _ => {
                    if op.expr.is_some() {
                        return Err(HqnnError::Circuit(format!(
                            "op {idx}: angle expression on a non-rotation gate"
                        )));
                    }
                }
            }
        }
        for sym in input_params.iter().chain(weight_params.iter()) {
            if !used.contains(sym) {
                return Err(HqnnError::Circuit(format!(
                    "declared parameter {sym} is not used by any gate"
                )));
            }
        }
        Ok(ParameterizedCircuit { num_qubits, ops, input_params, weight_params })
    }

    /// Gate-free circuit, the identity under composition.
    pub fn empty(num_qubits: usize) -> Result<Self> {
        Self::new(num_qubits, Vec::new(), Vec::new(), Vec::new())
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn ops(&self) -> &[CircuitOp] {
        &self.ops
    }

    pub fn input_params(&self) -> &[String] {
        &self.input_params
    }

    pub fn weight_params(&self) -> &[String] {
        &self.weight_params
    }

    /// Front-then-back concatenation. Parameter symbol sets must not collide.
    pub fn compose(&self, back: &ParameterizedCircuit) -> Result<ParameterizedCircuit> {
        if self.num_qubits != back.num_qubits {
            return Err(HqnnError::Compose(format!(
                "qubit counts differ: {} vs {}",
                self.num_qubits, back.num_qubits
            )));
        }
        let mine: HashSet<&str> = self
            .input_params
            .iter()
            .chain(self.weight_params.iter())
            .map(String::as_str)
            .collect();
        for sym in back.input_params.iter().chain(back.weight_params.iter()) {
            if mine.contains(sym.as_str()) {
                return Err(HqnnError::Compose(format!(
                    "parameter symbol {sym} appears in both circuits"
                )));
            }
        }
        let mut ops = self.ops.clone();
        ops.extend(back.ops.iter().cloned());
        let mut input_params = self.input_params.clone();
        input_params.extend(back.input_params.iter().cloned());
        let mut weight_params = self.weight_params.clone();
        weight_params.extend(back.weight_params.iter().cloned());
        ParameterizedCircuit::new(self.num_qubits, ops, input_params, weight_params)
    }

    /// Evaluates every angle expression, yielding a concrete gate list.
    /// Value order follows the declaration order of the parameter lists.
    pub fn bind(&self, inputs: &[f64], weights: &[f64]) -> Result<Vec<Gate>> {
        if inputs.len() != self.input_params.len() {
            return Err(HqnnError::Bind(format!(
                "expected {} input values, got {}",
                self.input_params.len(),
                inputs.len()
            )));
        }
        if weights.len() != self.weight_params.len() {
            return Err(HqnnError::Bind(format!(
                "expected {} weight values, got {}",
                self.weight_params.len(),
                weights.len()
            )));
        }
        let mut values: HashMap<&str, f64> = HashMap::new();
        for (sym, &v) in self.input_params.iter().zip(inputs) {
            values.insert(sym, v);
        }
        for (sym, &v) in self.weight_params.iter().zip(weights) {
            values.insert(sym, v);
        }
        let mut gates = Vec::with_capacity(self.ops.len());
        for op in &self.ops {
            gates.push(op_to_gate(op, &values));
        }
        Ok(gates)
    }
}

fn op_to_gate(op: &CircuitOp, values: &HashMap<&str, f64>) -> Gate {
    let angle = op.expr.as_ref().map(|expr| {
        let v = expr
            .parameter_id()
            .map(|id| values[id])
            .unwrap_or_default();
        expr.evaluate(v)
    });
    match op.kind {
        GateKind::H => Gate::H { target: op.target },
        GateKind::Ry => Gate::Ry { target: op.target, angle: angle.unwrap() },
        GateKind::Rz => Gate::Rz { target: op.target, angle: angle.unwrap() },
        // Validation guarantees the control is present.
        GateKind::Cnot => Gate::Cnot { control: op.control.unwrap(), target: op.target },
    }
}

impl fmt::Display for ParameterizedCircuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for op in &self.ops {
            match op.kind {
                GateKind::H => writeln!(f, "H q{}", op.target)?,
                GateKind::Ry => {
                    writeln!(f, "RY({}) q{}", op.expr.as_ref().unwrap().render(), op.target)?
                }
                GateKind::Rz => {
                    writeln!(f, "RZ({}) q{}", op.expr.as_ref().unwrap().render(), op.target)?
                }
                GateKind::Cnot => {
                    writeln!(f, "CNOT q{} q{}", op.control.unwrap(), op.target)?
                }
            }
        }
        Ok(())
    }
}

/// Data-encoding circuit: per repetition, a Hadamard layer followed by
/// `RZ(2 * x_i)` on qubit `i`. One qubit per feature.
pub fn z_feature_map(num_features: usize, reps: usize) -> Result<ParameterizedCircuit> {
    if num_features == 0 || num_features > MAX_QUBITS {
        return Err(HqnnError::Config(format!(
            "feature count must be in 1..={MAX_QUBITS}, got {num_features}"
        )));
    }
    if reps == 0 {
        return Err(HqnnError::Config("repetition count must be positive".into()));
    }
    let input_params: Vec<String> = (0..num_features).map(|i| format!("x_{i}")).collect();
    let mut ops = Vec::with_capacity(2 * reps * num_features);
    for _ in 0..reps {
        for q in 0..num_features {
            ops.push(CircuitOp::h(q));
        }
        for (q, sym) in input_params.iter().enumerate() {
            ops.push(CircuitOp::rz(q, ParamExpr::with_param(sym.clone(), 2.0, 0.0)?));
        }
    }
    ParameterizedCircuit::new(num_features, ops, input_params, Vec::new())
}

/// Trainable ansatz: `reps` blocks of an RY layer plus a linear CNOT chain,
/// closed by one final RY layer. Weight count is `num_qubits * (reps + 1)`;
/// a single qubit gets no entanglers.
pub fn real_amplitudes(num_qubits: usize, reps: usize) -> Result<ParameterizedCircuit> {
    if num_qubits == 0 || num_qubits > MAX_QUBITS {
        return Err(HqnnError::Config(format!(
            "qubit count must be in 1..={MAX_QUBITS}, got {num_qubits}"
        )));
    }
    if reps == 0 {
        return Err(HqnnError::Config("repetition count must be positive".into()));
    }
    let weight_params: Vec<String> = (0..num_qubits * (reps + 1))
        .map(|i| format!("θ_{i}"))
        .collect();
    let mut ops = Vec::new();
    let mut next = 0usize;
    for rep in 0..=reps {
        for q in 0..num_qubits {
            ops.push(CircuitOp::ry(
                q,
                ParamExpr::with_param(weight_params[next].clone(), 1.0, 0.0)?,
            ));
            next += 1;
        }
        if rep < reps {
            for q in 0..num_qubits.saturating_sub(1) {
                ops.push(CircuitOp::cnot(q, q + 1));
            }
        }
    }
    ParameterizedCircuit::new(num_qubits, ops, Vec::new(), weight_params)
}

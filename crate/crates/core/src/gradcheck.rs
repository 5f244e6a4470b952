//! Finite-difference verification of every analytic gradient path.
//!
//! Each component check compares analytic derivatives against central
//! differences of forward evaluations only, over seeded random
//! configurations. Quantum checks use an absolute tolerance; network and
//! end-to-end checks use a relative tolerance with an absolute floor. The
//! fault hook distorts the analytic side on purpose so the checker itself
//! can be shown to catch a planted bug.

use std::collections::HashSet;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use crate::circuits::{CircuitOp, GateKind, ParamExpr, ParameterizedCircuit};
use crate::error::{HqnnError, Result};
use crate::hybrid::{cross_entropy, HybridConfig, Model};
use crate::nn::{BackboneSpec, Conv2D, Dense, GlobalAvgPool, Layer, MaxPool2D, ReLU, Sigmoid};
use crate::qnn::{classifier_head, SamplerQnn};
use crate::tensor::Tensor;

/// Deliberate distortions of the analytic gradients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Fault {
    #[default]
    None,
    /// Negates every analytic derivative attributed to an RY rotation.
    FlipRySign,
}

/// Absolute tolerance for quantum parameter-shift checks.
pub const QNN_ABS_TOL: f64 = 1e-6;
/// Relative tolerance for network and end-to-end checks.
pub const NN_REL_TOL: f64 = 1e-4;
/// Absolute floor under the relative tolerance.
pub const NN_ABS_FLOOR: f64 = 1e-7;

const QNN_FD_STEP: f64 = 1e-6;
const NN_FD_STEP: f64 = 1e-5;

/// Outcome of one component's check.
#[derive(Debug, Clone)]
pub struct ComponentReport {
    pub name: &'static str,
    pub configs: usize,
    pub values: usize,
    pub max_abs_error: f64,
    /// Worst observed error divided by its allowance; at most 1 passes.
    pub error_ratio: f64,
    pub passed: bool,
}

/// All component reports of one run.
#[derive(Debug, Clone)]
pub struct GradCheckReport {
    pub components: Vec<ComponentReport>,
}

impl GradCheckReport {
    pub fn all_passed(&self) -> bool {
        self.components.iter().all(|c| c.passed)
    }

    pub fn failing(&self) -> impl Iterator<Item = &ComponentReport> {
        self.components.iter().filter(|c| !c.passed)
    }
}

struct PairSet {
    pairs: Vec<(f64, f64)>,
    configs: usize,
}

impl PairSet {
    fn new() -> Self {
        PairSet { pairs: Vec::new(), configs: 0 }
    }

    fn absolute_report(self, name: &'static str) -> ComponentReport {
        self.report(name, |_, _| QNN_ABS_TOL)
    }

    fn relative_report(self, name: &'static str) -> ComponentReport {
        self.report(name, |a, f| NN_REL_TOL * a.abs().max(f.abs()) + NN_ABS_FLOOR)
    }

    fn report(self, name: &'static str, allowed: impl Fn(f64, f64) -> f64) -> ComponentReport {
        let mut max_abs_error = 0.0f64;
        let mut error_ratio = 0.0f64;
        for &(analytic, fd) in &self.pairs {
            let err = (analytic - fd).abs();
            max_abs_error = max_abs_error.max(err);
            error_ratio = error_ratio.max(err / allowed(analytic, fd));
        }
        ComponentReport {
            name,
            configs: self.configs,
            values: self.pairs.len(),
            max_abs_error,
            error_ratio,
            passed: error_ratio <= 1.0,
        }
    }
}

/// Symbols that parameterize at least one RY gate.
fn ry_symbols(circuit: &ParameterizedCircuit) -> HashSet<String> {
    circuit
        .ops()
        .iter()
        .filter(|op| matches!(op.kind, GateKind::Ry))
        .filter_map(|op| op.expr.as_ref().and_then(|e| e.parameter_id()))
        .map(str::to_owned)
        .collect()
}

/// Compares the full jacobians of one sampler network against central
/// differences, appending every entry as an (analytic, fd) pair.
fn collect_qnn_pairs(
    qnn: &SamplerQnn,
    inputs: &[f64],
    weights: &[f64],
    fault: Fault,
    out: &mut PairSet,
) -> Result<()> {
    let grads = qnn.backward(inputs, weights)?;
    let flips = ry_symbols(qnn.circuit());
    let dim = qnn.output_dim();
    let sign = |symbol: &str| {
        if fault == Fault::FlipRySign && flips.contains(symbol) {
            -1.0
        } else {
            1.0
        }
    };
    let mut x = inputs.to_vec();
    for (c, symbol) in qnn.circuit().input_params().iter().enumerate() {
        let base = x[c];
        x[c] = base + QNN_FD_STEP;
        let plus = qnn.forward(&x, weights)?;
        x[c] = base - QNN_FD_STEP;
        let minus = qnn.forward(&x, weights)?;
        x[c] = base;
        for r in 0..dim {
            let fd = (plus.probs()[r] - minus.probs()[r]) / (2.0 * QNN_FD_STEP);
            out.pairs.push((sign(symbol) * grads.input_jacobian.get(r, c), fd));
        }
    }
    let mut w = weights.to_vec();
    for (c, symbol) in qnn.circuit().weight_params().iter().enumerate() {
        let base = w[c];
        w[c] = base + QNN_FD_STEP;
        let plus = qnn.forward(inputs, &w)?;
        w[c] = base - QNN_FD_STEP;
        let minus = qnn.forward(inputs, &w)?;
        w[c] = base;
        for r in 0..dim {
            let fd = (plus.probs()[r] - minus.probs()[r]) / (2.0 * QNN_FD_STEP);
            out.pairs.push((sign(symbol) * grads.weight_jacobian.get(r, c), fd));
        }
    }
    out.configs += 1;
    Ok(())
}

fn random_inputs(rng: &mut StdRng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(-1.5..1.5)).collect()
}

fn random_weights(rng: &mut StdRng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI)).collect()
}

fn ry_suite(rng: &mut StdRng, fault: Fault) -> Result<ComponentReport> {
    let mut set = PairSet::new();
    for n in 1..=3usize {
        for _ in 0..6 {
            let mut ops = Vec::new();
            let mut input_names = Vec::new();
            let mut weight_names = Vec::new();
            for q in 0..n {
                ops.push(CircuitOp::h(q));
            }
            for q in 0..n {
                let name = format!("w_{q}");
                let coeff = rng.gen_range(0.5..2.0);
                ops.push(CircuitOp::ry(q, ParamExpr::with_param(&name, coeff, 0.0)?));
                weight_names.push(name);
            }
            for q in 0..n.saturating_sub(1) {
                ops.push(CircuitOp::cnot(q, q + 1));
            }
            for q in 0..n {
                let name = format!("x_{q}");
                let coeff = rng.gen_range(-2.0..-0.5);
                let offset = rng.gen_range(-0.3..0.3);
                ops.push(CircuitOp::ry(q, ParamExpr::with_param(&name, coeff, offset)?));
                input_names.push(name);
            }
            let circuit = ParameterizedCircuit::new(n, ops, input_names, weight_names)?;
            let qnn = SamplerQnn::new(circuit);
            let inputs = random_inputs(rng, n);
            let weights = random_weights(rng, n);
            collect_qnn_pairs(&qnn, &inputs, &weights, fault, &mut set)?;
        }
    }
    Ok(set.absolute_report("qnn/RY"))
}

fn rz_suite(rng: &mut StdRng, fault: Fault) -> Result<ComponentReport> {
    let mut set = PairSet::new();
    for n in 1..=3usize {
        for _ in 0..6 {
            let mut ops = Vec::new();
            let mut input_names = Vec::new();
            let mut weight_names = Vec::new();
            for q in 0..n {
                ops.push(CircuitOp::h(q));
            }
            for q in 0..n {
                let name = format!("x_{q}");
                let coeff = rng.gen_range(1.0..3.0);
                let offset = rng.gen_range(-0.5..0.5);
                ops.push(CircuitOp::rz(q, ParamExpr::with_param(&name, coeff, offset)?));
                input_names.push(name);
            }
            for q in 0..n.saturating_sub(1) {
                ops.push(CircuitOp::cnot(q, q + 1));
            }
            for q in 0..n {
                let name = format!("w_{q}");
                let coeff = rng.gen_range(0.5..1.5);
                ops.push(CircuitOp::rz(q, ParamExpr::with_param(&name, coeff, 0.0)?));
                weight_names.push(name);
            }
            // Phases only move probabilities once rotated back off the Z axis.
            for q in 0..n {
                ops.push(CircuitOp::h(q));
            }
            let circuit = ParameterizedCircuit::new(n, ops, input_names, weight_names)?;
            let qnn = SamplerQnn::new(circuit);
            let inputs = random_inputs(rng, n);
            let weights = random_weights(rng, n);
            collect_qnn_pairs(&qnn, &inputs, &weights, fault, &mut set)?;
        }
    }
    Ok(set.absolute_report("qnn/RZ"))
}

fn shared_suite(rng: &mut StdRng, fault: Fault) -> Result<ComponentReport> {
    let mut set = PairSet::new();
    for _ in 0..4 {
        // One qubit, both symbols appearing twice with distinct coefficients.
        let ops = vec![
            CircuitOp::h(0),
            CircuitOp::rz(0, ParamExpr::with_param("x", 1.0, 0.0)?),
            CircuitOp::ry(0, ParamExpr::with_param("a", 1.0, 0.0)?),
            CircuitOp::rz(0, ParamExpr::with_param("x", 2.0, 0.0)?),
            CircuitOp::ry(0, ParamExpr::with_param("a", -0.5, 0.1)?),
        ];
        let circuit = ParameterizedCircuit::new(1, ops, vec!["x".into()], vec!["a".into()])?;
        let qnn = SamplerQnn::new(circuit);
        collect_qnn_pairs(&qnn, &random_inputs(rng, 1), &random_weights(rng, 1), fault, &mut set)?;
    }
    for _ in 0..4 {
        // Two qubits, the weight shared across both and the input reused
        // behind an entangler.
        let ops = vec![
            CircuitOp::h(0),
            CircuitOp::h(1),
            CircuitOp::ry(0, ParamExpr::with_param("a", 1.0, 0.0)?),
            CircuitOp::ry(1, ParamExpr::with_param("a", 1.5, 0.0)?),
            CircuitOp::cnot(0, 1),
            CircuitOp::rz(1, ParamExpr::with_param("x", 3.0, 0.0)?),
            CircuitOp::rz(0, ParamExpr::with_param("x", 1.0, -0.2)?),
            CircuitOp::h(1),
        ];
        let circuit = ParameterizedCircuit::new(2, ops, vec!["x".into()], vec!["a".into()])?;
        let qnn = SamplerQnn::new(circuit);
        collect_qnn_pairs(&qnn, &random_inputs(rng, 1), &random_weights(rng, 1), fault, &mut set)?;
    }
    Ok(set.absolute_report("qnn/shared"))
}

fn composed_suite(rng: &mut StdRng, fault: Fault) -> Result<ComponentReport> {
    let mut set = PairSet::new();
    for n in 1..=3usize {
        for fm_reps in 1..=2usize {
            for an_reps in 1..=2usize {
                for _ in 0..2 {
                    let qnn = classifier_head(n, fm_reps, an_reps)?;
                    let inputs = random_inputs(rng, qnn.num_inputs());
                    let weights = random_weights(rng, qnn.num_weights());
                    collect_qnn_pairs(&qnn, &inputs, &weights, fault, &mut set)?;
                }
            }
        }
    }
    Ok(set.absolute_report("qnn/composed"))
}

/// Values with pairwise gaps of at least 0.013 and magnitudes of at least
/// 0.013, so finite differences never cross a ReLU kink or reorder a
/// pooling window.
fn kink_safe_values(rng: &mut StdRng, len: usize) -> Vec<f64> {
    let mut values: Vec<f64> = (0..len)
        .map(|i| {
            let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            sign * (i + 1) as f64 * 0.013
        })
        .collect();
    values.shuffle(rng);
    values
}

/// Loss surrogate: dot product of the flattened output with a fixed
/// cotangent, whose gradient in the output is the cotangent itself.
fn layer_pairs(
    layer: &mut Layer,
    input: Tensor,
    rng: &mut StdRng,
    out: &mut PairSet,
) -> Result<()> {
    let output = layer.forward(&input)?;
    let cotangent: Vec<f64> = (0..output.len()).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let grad_out = Tensor::new(output.shape().to_vec(), cotangent.clone())?;
    let grad_in = layer.backward(&grad_out)?;
    let analytic_params: Vec<f64> =
        layer.grads().iter().flat_map(|(_, t)| t.data().to_vec()).collect();

    let loss = |layer: &mut Layer, input: &Tensor| -> Result<f64> {
        let out = layer.forward(input)?;
        Ok(out.data().iter().zip(&cotangent).map(|(o, c)| o * c).sum())
    };

    // Parameter derivatives.
    fn write_params(layer: &mut Layer, values: &[f64]) {
        let mut pos = 0;
        for (_, t) in layer.params_mut() {
            let n = t.len();
            t.data_mut().copy_from_slice(&values[pos..pos + n]);
            pos += n;
        }
    }
    let flat: Vec<f64> = layer.params().iter().flat_map(|(_, t)| t.data().to_vec()).collect();
    for (i, &analytic) in analytic_params.iter().enumerate() {
        let mut shifted = flat.clone();
        shifted[i] += NN_FD_STEP;
        write_params(layer, &shifted);
        let plus = loss(layer, &input)?;
        shifted[i] = flat[i] - NN_FD_STEP;
        write_params(layer, &shifted);
        let minus = loss(layer, &input)?;
        out.pairs.push((analytic, (plus - minus) / (2.0 * NN_FD_STEP)));
    }
    write_params(layer, &flat);

    // Input derivatives.
    for i in 0..input.len() {
        let mut plus_t = input.clone();
        plus_t.data_mut()[i] += NN_FD_STEP;
        let plus = loss(layer, &plus_t)?;
        let mut minus_t = input.clone();
        minus_t.data_mut()[i] -= NN_FD_STEP;
        let minus = loss(layer, &minus_t)?;
        out.pairs.push((grad_in.data()[i], (plus - minus) / (2.0 * NN_FD_STEP)));
    }
    out.configs += 1;
    Ok(())
}

fn random_tensor(rng: &mut StdRng, shape: &[usize]) -> Tensor {
    let len = shape.iter().product();
    let data = (0..len).map(|_| rng.gen_range(-1.0..1.0)).collect();
    Tensor::new(shape.to_vec(), data).expect("valid test shape")
}

fn kink_safe_tensor(rng: &mut StdRng, shape: &[usize]) -> Tensor {
    let len = shape.iter().product();
    Tensor::new(shape.to_vec(), kink_safe_values(rng, len)).expect("valid test shape")
}

fn dense_suite(rng: &mut StdRng) -> Result<ComponentReport> {
    let mut set = PairSet::new();
    for (inf, outf, batch) in [(3usize, 2usize, 2usize), (5, 1, 3), (4, 4, 1)] {
        for _ in 0..2 {
            let mut layer = Layer::Dense(Dense::new(inf, outf, rng));
            layer_pairs(&mut layer, random_tensor(rng, &[batch, inf]), rng, &mut set)?;
        }
    }
    Ok(set.relative_report("nn/dense"))
}

fn conv_suite(rng: &mut StdRng) -> Result<ComponentReport> {
    let mut set = PairSet::new();
    let shapes: [(usize, usize, usize, usize, usize, usize); 3] =
        [(1, 2, 3, 1, 1, 6), (2, 3, 3, 2, 0, 7), (1, 1, 2, 1, 1, 5)];
    for (ic, oc, k, s, p, h) in shapes {
        for _ in 0..2 {
            let mut layer = Layer::Conv2D(Conv2D::new(ic, oc, k, s, p, rng)?);
            layer_pairs(&mut layer, random_tensor(rng, &[2, ic, h, h]), rng, &mut set)?;
        }
    }
    Ok(set.relative_report("nn/conv2d"))
}

fn relu_suite(rng: &mut StdRng) -> Result<ComponentReport> {
    let mut set = PairSet::new();
    for shape in [&[2usize, 7][..], &[1, 3, 4, 4][..]] {
        for _ in 0..2 {
            let mut layer = Layer::ReLU(ReLU::new());
            layer_pairs(&mut layer, kink_safe_tensor(rng, shape), rng, &mut set)?;
        }
    }
    Ok(set.relative_report("nn/relu"))
}

fn maxpool_suite(rng: &mut StdRng) -> Result<ComponentReport> {
    let mut set = PairSet::new();
    for (kernel, stride, h) in [(2usize, 2usize, 6usize), (3, 2, 7)] {
        for _ in 0..2 {
            let mut layer = Layer::MaxPool2D(MaxPool2D::new(kernel, stride)?);
            layer_pairs(&mut layer, kink_safe_tensor(rng, &[1, 2, h, h]), rng, &mut set)?;
        }
    }
    Ok(set.relative_report("nn/maxpool"))
}

fn gap_suite(rng: &mut StdRng) -> Result<ComponentReport> {
    let mut set = PairSet::new();
    for shape in [&[2usize, 3, 4, 4][..], &[1, 1, 5, 3][..], &[3, 2, 2, 2][..]] {
        let mut layer = Layer::GlobalAvgPool(GlobalAvgPool::new());
        layer_pairs(&mut layer, random_tensor(rng, shape), rng, &mut set)?;
    }
    Ok(set.relative_report("nn/gap"))
}

fn sigmoid_suite(rng: &mut StdRng) -> Result<ComponentReport> {
    let mut set = PairSet::new();
    for shape in [&[2usize, 3][..], &[4, 1][..], &[1, 6][..]] {
        let mut layer = Layer::Sigmoid(Sigmoid::new());
        layer_pairs(&mut layer, random_tensor(rng, shape), rng, &mut set)?;
    }
    Ok(set.relative_report("nn/sigmoid"))
}

/// Draws batches until every sample grants its label at least 1e-3
/// probability, keeping the log-loss curvature finite-difference friendly.
fn conditioned_batch(
    rng: &mut StdRng,
    model: &mut Model,
    dim: usize,
    class_count: u16,
) -> Result<(Tensor, Vec<u8>)> {
    for _ in 0..50 {
        let batch_n = rng.gen_range(2..=4usize);
        let batch = random_tensor(rng, &[batch_n, dim]);
        let labels: Vec<u8> = (0..batch_n).map(|_| rng.gen_range(0..class_count) as u8).collect();
        let probs = model.forward(&batch)?;
        let c = usize::from(class_count);
        let well_conditioned = labels
            .iter()
            .enumerate()
            .all(|(b, &label)| probs.data()[b * c + usize::from(label)] >= 1e-3);
        if well_conditioned {
            return Ok((batch, labels));
        }
    }
    Err(HqnnError::State(
        "no well-conditioned batch in 50 draws; initialization scales are off".into(),
    ))
}

fn hybrid_suite(rng: &mut StdRng, fault: Fault) -> Result<ComponentReport> {
    let mut set = PairSet::new();
    let mut run = |model: &mut Model, batch: Tensor, labels: Vec<u8>| -> Result<()> {
        model.forward(&batch)?;
        model.backward(&labels)?;
        let mut analytic = model.flat_grads();
        if fault == Fault::FlipRySign {
            // Every quantum weight drives an RY rotation in the ansatz.
            let start = analytic.len() - model.quantum_weight_count();
            for g in &mut analytic[start..] {
                *g = -*g;
            }
        }
        let base = model.flat_params();
        for i in 0..base.len() {
            let mut shifted = base.clone();
            shifted[i] += NN_FD_STEP;
            model.set_flat_params(&shifted)?;
            let plus = cross_entropy(&model.forward(&batch)?, &labels)?;
            shifted[i] = base[i] - NN_FD_STEP;
            model.set_flat_params(&shifted)?;
            let minus = cross_entropy(&model.forward(&batch)?, &labels)?;
            set.pairs.push((analytic[i], (plus - minus) / (2.0 * NN_FD_STEP)));
        }
        model.set_flat_params(&base)?;
        set.configs += 1;
        Ok(())
    };

    // Small random models on tiny dense backbones: every layer in the chain
    // is smooth, so central differences are trustworthy at any seed. Batches
    // whose labeled class gets under 1e-3 probability are redrawn; the log
    // loss curves too sharply there for the finite-difference step.
    for _ in 0..12 {
        let num_qubits = rng.gen_range(1..=2usize);
        let dim = rng.gen_range(2..=4usize);
        let class_count = if num_qubits == 2 { rng.gen_range(2..=4u16) } else { 2 };
        let config = HybridConfig {
            num_qubits,
            feature_map_reps: rng.gen_range(1..=2),
            ansatz_reps: rng.gen_range(1..=2),
            class_count,
        };
        let spec = BackboneSpec::Identity { input_dim: dim, out_features: num_qubits };
        let mut model = Model::new_hybrid(&spec, config, rng.gen())?;
        let (batch, labels) = conditioned_batch(rng, &mut model, dim, class_count)?;
        run(&mut model, batch, labels)?;
    }
    Ok(set.relative_report("hybrid/end-to-end"))
}

/// Runs every component check with one seed; the fault, if any, is applied
/// to the analytic side so a healthy implementation fails the report.
pub fn run_gradcheck(seed: u64, fault: Fault) -> Result<GradCheckReport> {
    let mut rng = StdRng::seed_from_u64(seed);
    let components = vec![
        ry_suite(&mut rng, fault)?,
        rz_suite(&mut rng, fault)?,
        shared_suite(&mut rng, fault)?,
        composed_suite(&mut rng, fault)?,
        dense_suite(&mut rng)?,
        conv_suite(&mut rng)?,
        relu_suite(&mut rng)?,
        maxpool_suite(&mut rng)?,
        gap_suite(&mut rng)?,
        sigmoid_suite(&mut rng)?,
        hybrid_suite(&mut rng, fault)?,
    ];
    Ok(GradCheckReport { components })
}

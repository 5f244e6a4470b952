//! End-to-end models and the training engine.
//!
//! Two model kinds share one interface: a hybrid model (classical backbone
//! feeding a sampler-QNN head) and a purely classical baseline (same
//! backbone, dense + sigmoid head). Both expose class probabilities, exact
//! gradients, flat parameter vectors for the optimizers, and checkpointing.

use std::path::PathBuf;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::data::Dataset;
use crate::error::{HqnnError, Result};
use crate::nn::{build_backbone, BackboneSpec, Dense, Layer, Sigmoid};
use crate::optim::OptimizerKind;
use crate::qnn::{classifier_head, SamplerQnn};
use crate::tensor::Tensor;

/// Probabilities are clamped to `[CLAMP, 1 - CLAMP]` inside the loss so
/// log terms and their gradients stay finite.
pub const PROB_CLAMP: f64 = 1e-12;

/// Validation and evaluation run in fixed-size batches so that an accuracy
/// computed during training is bit-identical to one computed afterwards.
const EVAL_BATCH: usize = 64;

/// Quantum-head shape parameters; serialized into hybrid checkpoints.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HybridConfig {
    pub num_qubits: usize,
    pub feature_map_reps: usize,
    pub ansatz_reps: usize,
    pub class_count: u16,
}

impl HybridConfig {
    /// One qubit, single-repetition feature map and ansatz, two classes:
    /// the default two-weight head.
    pub fn default_head() -> Self {
        HybridConfig { num_qubits: 1, feature_map_reps: 1, ansatz_reps: 1, class_count: 2 }
    }

    fn validate(&self) -> Result<()> {
        let outcomes = 1usize
            .checked_shl(self.num_qubits as u32)
            .filter(|_| self.num_qubits <= crate::statevec::MAX_QUBITS)
            .ok_or_else(|| HqnnError::Config("qubit count out of range".into()))?;
        if self.class_count < 2 || usize::from(self.class_count) > outcomes {
            return Err(HqnnError::Config(format!(
                "class count {} must lie in 2..=2^{} = {outcomes}",
                self.class_count, self.num_qubits
            )));
        }
        // Checkpoints store repetition counts as single bytes.
        if !(1..=255).contains(&self.feature_map_reps) || !(1..=255).contains(&self.ansatz_reps) {
            return Err(HqnnError::Config(format!(
                "repetition counts must lie in 1..=255, got {} and {}",
                self.feature_map_reps, self.ansatz_reps
            )));
        }
        Ok(())
    }
}

fn backbone_width(layers: &[Layer]) -> Result<usize> {
    layers
        .iter()
        .rev()
        .find_map(|layer| match layer {
            Layer::Dense(d) => Some(d.out_features()),
            _ => None,
        })
        .ok_or_else(|| {
            HqnnError::Config("backbone needs a dense layer to fix its output width".into())
        })
}

/// Classical feature extractor with a quantum sampler head. Outcome `k` is
/// folded onto class `k mod class_count` (the identity when the counts
/// match).
#[derive(Debug, Clone)]
pub struct HybridModel {
    backbone: Vec<Layer>,
    qnn: SamplerQnn,
    qnn_weights: Vec<f64>,
    qnn_weight_grads: Vec<f64>,
    config: HybridConfig,
    cache: Option<HybridCache>,
}

#[derive(Debug, Clone)]
struct HybridCache {
    features: Tensor,
    probs: Tensor,
}

impl HybridModel {
    /// Assembles a model from existing parts, validating widths and counts.
    pub fn from_parts(
        backbone: Vec<Layer>,
        qnn_weights: Vec<f64>,
        config: HybridConfig,
    ) -> Result<Self> {
        config.validate()?;
        let width = backbone_width(&backbone)?;
        if width != config.num_qubits {
            return Err(HqnnError::Config(format!(
                "backbone emits {width} features but the quantum head wants {}",
                config.num_qubits
            )));
        }
        let qnn = classifier_head(config.num_qubits, config.feature_map_reps, config.ansatz_reps)?;
        if qnn_weights.len() != qnn.num_weights() {
            return Err(HqnnError::Config(format!(
                "head wants {} weights, got {}",
                qnn.num_weights(),
                qnn_weights.len()
            )));
        }
        Ok(HybridModel {
            backbone,
            qnn_weight_grads: vec![0.0; qnn_weights.len()],
            qnn,
            qnn_weights,
            config,
            cache: None,
        })
    }

    pub fn config(&self) -> &HybridConfig {
        &self.config
    }

    pub fn qnn(&self) -> &SamplerQnn {
        &self.qnn
    }

    pub fn qnn_weights(&self) -> &[f64] {
        &self.qnn_weights
    }

    pub fn backbone(&self) -> &[Layer] {
        &self.backbone
    }

    fn forward(&mut self, batch: &Tensor) -> Result<Tensor> {
        let mut t = batch.clone();
        for layer in &mut self.backbone {
            t = layer.forward(&t)?;
        }
        if t.rank() != 2 || t.shape()[1] != self.config.num_qubits {
            return Err(HqnnError::Config(format!(
                "backbone produced {:?}, head wants [batch, {}]",
                t.shape(),
                self.config.num_qubits
            )));
        }
        let batch_n = t.shape()[0];
        let c = usize::from(self.config.class_count);
        let n_inputs = self.config.num_qubits;
        let mut probs = Tensor::zeros(&[batch_n, c]);
        for b in 0..batch_n {
            let features = &t.data()[b * n_inputs..(b + 1) * n_inputs];
            let outcome = self.qnn.forward(features, &self.qnn_weights)?;
            for (k, &p) in outcome.probs().iter().enumerate() {
                probs.data_mut()[b * c + k % c] += p;
            }
        }
        self.cache = Some(HybridCache { features: t, probs: probs.clone() });
        Ok(probs)
    }

    /// Backpropagates `grad_probs` (gradient of the loss in the class
    /// probabilities) through the quantum head and the backbone. Quantum
    /// weight gradients land in `qnn_weight_grads`, layer gradients in the
    /// layers. Per-sample contraction runs in batch order so the result is
    /// deterministic.
    fn backward(&mut self, grad_probs: &Tensor) -> Result<()> {
        let cache = self
            .cache
            .as_ref()
            .ok_or_else(|| HqnnError::State("model backward before forward".into()))?;
        let batch_n = cache.features.shape()[0];
        let c = usize::from(self.config.class_count);
        if grad_probs.shape() != [batch_n, c] {
            return Err(HqnnError::Shape(format!(
                "probability gradient wants [{batch_n}, {c}], got {:?}",
                grad_probs.shape()
            )));
        }
        let n_inputs = self.config.num_qubits;
        let dim = self.qnn.output_dim();
        self.qnn_weight_grads.fill(0.0);
        let mut grad_features = Tensor::zeros(&[batch_n, n_inputs]);
        for b in 0..batch_n {
            let features = &cache.features.data()[b * n_inputs..(b + 1) * n_inputs];
            let jac = self.qnn.backward(features, &self.qnn_weights)?;
            let dldp: Vec<f64> = (0..dim)
                .map(|k| grad_probs.data()[b * c + k % c])
                .collect();
            for (j, g) in jac.weight_jacobian.vjp(&dldp).into_iter().enumerate() {
                self.qnn_weight_grads[j] += g;
            }
            let feat_row = &mut grad_features.data_mut()[b * n_inputs..(b + 1) * n_inputs];
            feat_row.copy_from_slice(&jac.input_jacobian.vjp(&dldp));
        }
        let mut grad = grad_features;
        for layer in self.backbone.iter_mut().rev() {
            grad = layer.backward(&grad)?;
        }
        Ok(())
    }
}

/// Backbone plus a dense + sigmoid binary head.
#[derive(Debug, Clone)]
pub struct ClassicalModel {
    backbone: Vec<Layer>,
    head: Vec<Layer>,
}

impl ClassicalModel {
    pub fn from_parts(backbone: Vec<Layer>, head_dense: Dense) -> Result<Self> {
        let width = backbone_width(&backbone)?;
        if width != 1 || head_dense.in_features() != 1 || head_dense.out_features() != 1 {
            return Err(HqnnError::Config(format!(
                "classical head wants a 1-wide backbone into dense(1->1), got width {width}, dense({}->{})",
                head_dense.in_features(),
                head_dense.out_features()
            )));
        }
        Ok(ClassicalModel {
            backbone,
            head: vec![Layer::Dense(head_dense), Layer::Sigmoid(Sigmoid::new())],
        })
    }

    pub fn backbone(&self) -> &[Layer] {
        &self.backbone
    }

    pub fn head(&self) -> &[Layer] {
        &self.head
    }

    fn forward(&mut self, batch: &Tensor) -> Result<Tensor> {
        let mut t = batch.clone();
        for layer in self.backbone.iter_mut().chain(self.head.iter_mut()) {
            t = layer.forward(&t)?;
        }
        if t.rank() != 2 || t.shape()[1] != 1 {
            return Err(HqnnError::Config(format!(
                "classical head produced {:?}, wanted [batch, 1]",
                t.shape()
            )));
        }
        let batch_n = t.shape()[0];
        let mut probs = Tensor::zeros(&[batch_n, 2]);
        for b in 0..batch_n {
            let p = t.data()[b];
            probs.data_mut()[b * 2] = 1.0 - p;
            probs.data_mut()[b * 2 + 1] = p;
        }
        Ok(probs)
    }

    fn backward(&mut self, grad_probs: &Tensor) -> Result<()> {
        if grad_probs.rank() != 2 || grad_probs.shape()[1] != 2 {
            return Err(HqnnError::Shape(format!(
                "probability gradient wants [batch, 2], got {:?}",
                grad_probs.shape()
            )));
        }
        let batch_n = grad_probs.shape()[0];
        // probs = [1 - p, p], so dL/dp = dL/dprobs1 - dL/dprobs0.
        let mut grad = Tensor::zeros(&[batch_n, 1]);
        for b in 0..batch_n {
            grad.data_mut()[b] = grad_probs.data()[b * 2 + 1] - grad_probs.data()[b * 2];
        }
        for layer in self.head.iter_mut().rev().chain(self.backbone.iter_mut().rev()) {
            grad = layer.backward(&grad)?;
        }
        Ok(())
    }
}

/// Either model kind behind one training/evaluation interface.
#[derive(Debug, Clone)]
#[allow(clippy::large_enum_variant)]
pub enum Model {
    Hybrid(HybridModel),
    Classical(ClassicalModel),
}

impl Model {
    /// Seeded construction: backbone init, then quantum weights drawn
    /// uniformly from [-0.1, 0.1].
    pub fn new_hybrid(spec: &BackboneSpec, config: HybridConfig, seed: u64) -> Result<Model> {
        let mut rng = StdRng::seed_from_u64(seed);
        let backbone = build_backbone(spec, &mut rng)?;
        let qnn = classifier_head(config.num_qubits, config.feature_map_reps, config.ansatz_reps)?;
        let weights = (0..qnn.num_weights()).map(|_| rng.gen_range(-0.1..0.1)).collect();
        Ok(Model::Hybrid(HybridModel::from_parts(backbone, weights, config)?))
    }

    pub fn new_classical(spec: &BackboneSpec, seed: u64) -> Result<Model> {
        let mut rng = StdRng::seed_from_u64(seed);
        let backbone = build_backbone(spec, &mut rng)?;
        let head = Dense::new(1, 1, &mut rng);
        Ok(Model::Classical(ClassicalModel::from_parts(backbone, head)?))
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Model::Hybrid(_) => "hybrid",
            Model::Classical(_) => "classical",
        }
    }

    pub fn class_count(&self) -> u16 {
        match self {
            Model::Hybrid(m) => m.config.class_count,
            Model::Classical(_) => 2,
        }
    }

    /// Class-probability matrix `[batch, class_count]`; rows sum to 1.
    pub fn forward(&mut self, batch: &Tensor) -> Result<Tensor> {
        match self {
            Model::Hybrid(m) => m.forward(batch),
            Model::Classical(m) => m.forward(batch),
        }
    }

    /// Cross-entropy backward pass for the cached forward batch: computes
    /// the loss gradient and pushes it through every parameter.
    pub fn backward(&mut self, labels: &[u8]) -> Result<()> {
        match self {
            Model::Hybrid(m) => {
                let probs = m
                    .cache
                    .as_ref()
                    .ok_or_else(|| HqnnError::State("model backward before forward".into()))?
                    .probs
                    .clone();
                let grad = cross_entropy_grad(&probs, labels)?;
                m.backward(&grad)
            }
            Model::Classical(m) => {
                let probs = m.forward_cached()?;
                let grad = cross_entropy_grad(&probs, labels)?;
                m.backward(&grad)
            }
        }
    }

    fn layer_stacks(&self) -> Vec<&[Layer]> {
        match self {
            Model::Hybrid(m) => vec![&m.backbone],
            Model::Classical(m) => vec![&m.backbone, &m.head],
        }
    }

    fn layer_stacks_mut(&mut self) -> Vec<&mut [Layer]> {
        match self {
            Model::Hybrid(m) => vec![&mut m.backbone],
            Model::Classical(m) => vec![&mut m.backbone, &mut m.head],
        }
    }

    /// Every trainable parameter, classical layers first (in stack order),
    /// quantum weights last.
    pub fn flat_params(&self) -> Vec<f64> {
        let mut out = Vec::new();
        for stack in self.layer_stacks() {
            for layer in stack {
                for (_, t) in layer.params() {
                    out.extend_from_slice(t.data());
                }
            }
        }
        if let Model::Hybrid(m) = self {
            out.extend_from_slice(&m.qnn_weights);
        }
        out
    }

    pub fn set_flat_params(&mut self, values: &[f64]) -> Result<()> {
        if values.len() != self.param_count() {
            return Err(HqnnError::Shape(format!(
                "model has {} parameters, got {}",
                self.param_count(),
                values.len()
            )));
        }
        let mut pos = 0usize;
        for stack in self.layer_stacks_mut() {
            for layer in stack {
                for (_, t) in layer.params_mut() {
                    let n = t.len();
                    t.data_mut().copy_from_slice(&values[pos..pos + n]);
                    pos += n;
                }
            }
        }
        if let Model::Hybrid(m) = self {
            m.qnn_weights.copy_from_slice(&values[pos..]);
        }
        Ok(())
    }

    /// Gradients aligned with `flat_params`; valid after `backward`.
    pub fn flat_grads(&self) -> Vec<f64> {
        let mut out = Vec::new();
        for stack in self.layer_stacks() {
            for layer in stack {
                for (_, t) in layer.grads() {
                    out.extend_from_slice(t.data());
                }
            }
        }
        if let Model::Hybrid(m) = self {
            out.extend_from_slice(&m.qnn_weight_grads);
        }
        out
    }

    pub fn param_count(&self) -> usize {
        let classical: usize = self
            .layer_stacks()
            .iter()
            .flat_map(|stack| stack.iter())
            .map(Layer::param_count)
            .sum();
        classical + self.quantum_weight_count()
    }

    pub fn quantum_weight_count(&self) -> usize {
        match self {
            Model::Hybrid(m) => m.qnn_weights.len(),
            Model::Classical(_) => 0,
        }
    }

    /// Layer descriptions with parameter counts, for inspection output.
    pub fn layer_summaries(&self) -> Vec<(String, usize)> {
        self.layer_stacks()
            .iter()
            .flat_map(|stack| stack.iter())
            .map(|layer| (layer.describe(), layer.param_count()))
            .collect()
    }

    /// Hard class decisions: argmax with ties resolved to the higher index,
    /// so a binary tie yields class 1.
    pub fn predict(&mut self, batch: &Tensor) -> Result<Vec<u8>> {
        let probs = self.forward(batch)?;
        let c = probs.shape()[1];
        Ok((0..probs.shape()[0])
            .map(|b| argmax_class(&probs.data()[b * c..(b + 1) * c]))
            .collect())
    }

    /// Serialized checkpoint representation (also the model's size metric).
    pub fn checkpoint_bytes(&self) -> Vec<u8> {
        crate::checkpoint::checkpoint_bytes(self)
    }

    /// Trains with seeded shuffling, per-epoch validation, and
    /// best-validation-accuracy checkpointing; afterwards the best
    /// checkpoint is loaded back so the model ends at its best epoch.
    pub fn fit(
        &mut self,
        train: &Dataset,
        val: &Dataset,
        config: &TrainConfig,
    ) -> Result<Vec<EpochRecord>> {
        config.validate()?;
        if train.is_empty() || val.is_empty() {
            return Err(HqnnError::Data("training and validation sets must be non-empty".into()));
        }
        for ds in [train, val] {
            if ds.class_count() != self.class_count() {
                return Err(HqnnError::Data(format!(
                    "dataset has {} classes, model expects {}",
                    ds.class_count(),
                    self.class_count()
                )));
            }
        }
        let mut rng = StdRng::seed_from_u64(config.seed);
        let mut optimizer = config.optimizer.build(config.learning_rate, self.param_count());
        let mut records = Vec::with_capacity(config.epochs);
        let mut best_accuracy = f64::NEG_INFINITY;
        let mut indices: Vec<usize> = (0..train.len()).collect();
        for epoch in 1..=config.epochs {
            let started = Instant::now();
            indices.shuffle(&mut rng);
            let mut loss_sum = 0.0;
            for chunk in indices.chunks(config.batch_size) {
                let (batch, labels) = train.batch(chunk);
                let probs = self.forward(&batch)?;
                let loss = cross_entropy(&probs, &labels)?;
                if !loss.is_finite() {
                    return Err(HqnnError::Diverged {
                        epoch,
                        msg: format!("training loss became {loss}"),
                    });
                }
                loss_sum += loss * chunk.len() as f64;
                self.backward(&labels)?;
                let mut params = self.flat_params();
                optimizer.step(&mut params, &self.flat_grads());
                self.set_flat_params(&params)?;
            }
            let train_loss = loss_sum / train.len() as f64;
            let (val_loss, val_accuracy) = eval_pass(self, val)?;
            if !val_loss.is_finite() {
                return Err(HqnnError::Diverged {
                    epoch,
                    msg: format!("validation loss became {val_loss}"),
                });
            }
            if val_accuracy > best_accuracy {
                best_accuracy = val_accuracy;
                crate::checkpoint::save_checkpoint(self, &config.checkpoint_path)?;
            }
            records.push(EpochRecord {
                epoch,
                train_loss,
                val_loss,
                val_accuracy,
                elapsed_seconds: started.elapsed().as_secs_f64(),
            });
        }
        *self = crate::checkpoint::load_checkpoint(&config.checkpoint_path)?;
        Ok(records)
    }

    /// Accuracy, loss, wall-clock seconds, and serialized size on a dataset.
    pub fn evaluate(&mut self, ds: &Dataset) -> Result<EvalReport> {
        let started = Instant::now();
        let (loss, accuracy) = eval_pass(self, ds)?;
        Ok(EvalReport {
            accuracy,
            loss,
            elapsed_seconds: started.elapsed().as_secs_f64(),
            model_size_bytes: self.checkpoint_bytes().len() as u64,
        })
    }
}

impl ClassicalModel {
    /// Recomputes the cached probability matrix from the sigmoid layer's
    /// stored output (forward must have run).
    fn forward_cached(&self) -> Result<Tensor> {
        let Some(Layer::Sigmoid(sig)) = self.head.last() else {
            unreachable!("classical head ends in sigmoid");
        };
        let out = sig
            .cached_output()
            .ok_or_else(|| HqnnError::State("model backward before forward".into()))?;
        let batch_n = out.shape()[0];
        let mut probs = Tensor::zeros(&[batch_n, 2]);
        for b in 0..batch_n {
            let p = out.data()[b];
            probs.data_mut()[b * 2] = 1.0 - p;
            probs.data_mut()[b * 2 + 1] = p;
        }
        Ok(probs)
    }
}

fn argmax_class(row: &[f64]) -> u8 {
    let mut best = 0usize;
    for k in 1..row.len() {
        if row[k] >= row[best] {
            best = k;
        }
    }
    best as u8
}

fn eval_pass(model: &mut Model, ds: &Dataset) -> Result<(f64, f64)> {
    if ds.is_empty() {
        return Err(HqnnError::Data("cannot evaluate on an empty dataset".into()));
    }
    let indices: Vec<usize> = (0..ds.len()).collect();
    let mut loss_sum = 0.0;
    let mut correct = 0usize;
    for chunk in indices.chunks(EVAL_BATCH) {
        let (batch, labels) = ds.batch(chunk);
        let probs = model.forward(&batch)?;
        loss_sum += cross_entropy(&probs, &labels)? * chunk.len() as f64;
        let c = probs.shape()[1];
        for (i, &label) in labels.iter().enumerate() {
            if argmax_class(&probs.data()[i * c..(i + 1) * c]) == label {
                correct += 1;
            }
        }
    }
    Ok((loss_sum / ds.len() as f64, correct as f64 / ds.len() as f64))
}

fn check_prob_args(probs: &Tensor, labels: &[u8]) -> Result<usize> {
    if probs.rank() != 2 {
        return Err(HqnnError::Shape(format!(
            "probabilities must be [batch, classes], got {:?}",
            probs.shape()
        )));
    }
    if probs.shape()[0] != labels.len() || labels.is_empty() {
        return Err(HqnnError::Data(format!(
            "{} labels for {} probability rows",
            labels.len(),
            probs.shape()[0]
        )));
    }
    let c = probs.shape()[1];
    if let Some(&bad) = labels.iter().find(|&&l| usize::from(l) >= c) {
        return Err(HqnnError::Data(format!("label {bad} outside {c} classes")));
    }
    Ok(c)
}

/// Mean cross-entropy. Binary case: `-[y ln p + (1-y) ln(1-p)]` with
/// `p = P(class 1)`; multi-class: `-ln p_label`. Probabilities are clamped
/// before the logarithm.
pub fn cross_entropy(probs: &Tensor, labels: &[u8]) -> Result<f64> {
    let c = check_prob_args(probs, labels)?;
    let mut total = 0.0;
    for (b, &label) in labels.iter().enumerate() {
        let row = &probs.data()[b * c..(b + 1) * c];
        total += if c == 2 {
            let p = row[1].clamp(PROB_CLAMP, 1.0 - PROB_CLAMP);
            let y = f64::from(label);
            -(y * p.ln() + (1.0 - y) * (1.0 - p).ln())
        } else {
            -row[usize::from(label)].clamp(PROB_CLAMP, 1.0 - PROB_CLAMP).ln()
        };
    }
    Ok(total / labels.len() as f64)
}

/// Gradient of `cross_entropy` in the probability matrix. The clamp is
/// treated as the identity (straight-through), so gradients stay finite at
/// saturated probabilities. The binary gradient lives entirely on the
/// class-1 column; the quantum head's zero-column-sum jacobians make the
/// equivalent two-sided form redundant.
pub fn cross_entropy_grad(probs: &Tensor, labels: &[u8]) -> Result<Tensor> {
    let c = check_prob_args(probs, labels)?;
    let n = labels.len() as f64;
    let mut grad = Tensor::zeros(probs.shape());
    for (b, &label) in labels.iter().enumerate() {
        if c == 2 {
            let p = probs.data()[b * c + 1].clamp(PROB_CLAMP, 1.0 - PROB_CLAMP);
            let y = f64::from(label);
            grad.data_mut()[b * c + 1] = (-y / p + (1.0 - y) / (1.0 - p)) / n;
        } else {
            let p = probs.data()[b * c + usize::from(label)].clamp(PROB_CLAMP, 1.0 - PROB_CLAMP);
            grad.data_mut()[b * c + usize::from(label)] = -1.0 / p / n;
        }
    }
    Ok(grad)
}

/// Epoch-loop hyperparameters.
#[derive(Debug, Clone)]
pub struct TrainConfig {
    pub epochs: usize,
    pub batch_size: usize,
    pub learning_rate: f64,
    pub optimizer: OptimizerKind,
    pub seed: u64,
    pub checkpoint_path: PathBuf,
}

impl TrainConfig {
    fn validate(&self) -> Result<()> {
        if self.epochs == 0 || self.batch_size == 0 {
            return Err(HqnnError::Config("epochs and batch size must be positive".into()));
        }
        if !(self.learning_rate > 0.0 && self.learning_rate.is_finite()) {
            return Err(HqnnError::Config(format!(
                "learning rate must be positive and finite, got {}",
                self.learning_rate
            )));
        }
        Ok(())
    }
}

/// One line of the training log. Field order is the JSON key order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpochRecord {
    pub epoch: usize,
    pub train_loss: f64,
    pub val_loss: f64,
    pub val_accuracy: f64,
    pub elapsed_seconds: f64,
}

/// Evaluation metrics; mirrors the comparison-table columns.
#[derive(Debug, Clone, Serialize)]
pub struct EvalReport {
    pub accuracy: f64,
    pub loss: f64,
    pub elapsed_seconds: f64,
    pub model_size_bytes: u64,
}

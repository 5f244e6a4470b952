//! Classical layer stack with hand-written forward and backward passes.
//!
//! Every layer caches what its backward pass needs during forward; calling
//! backward first is a state error. Parameter gradients are overwritten on
//! each backward call and are already summed over the batch.
//!
//! Conventions: convolution is cross-correlation (no kernel flip) with bias;
//! ReLU's subgradient at 0 is 0; max-pooling routes gradient to the first
//! maximal index of each window; image tensors are `[batch, ch, h, w]`.

use rand::Rng;

use crate::error::{HqnnError, Result};
use crate::tensor::Tensor;

fn xavier_uniform(shape: &[usize], fan_in: usize, fan_out: usize, rng: &mut impl Rng) -> Tensor {
    let limit = (6.0 / (fan_in + fan_out) as f64).sqrt();
    let len: usize = shape.iter().product();
    let data = (0..len).map(|_| rng.gen_range(-limit..limit)).collect();
    Tensor::new(shape.to_vec(), data).expect("generated data matches shape")
}

/// Fully connected layer: `y = W x + b` with `W: [out, in]`.
#[derive(Debug, Clone)]
pub struct Dense {
    weight: Tensor,
    bias: Tensor,
    grad_weight: Tensor,
    grad_bias: Tensor,
    input: Option<Tensor>,
}

impl Dense {
    pub fn new(in_features: usize, out_features: usize, rng: &mut impl Rng) -> Self {
        let weight = xavier_uniform(&[out_features, in_features], in_features, out_features, rng);
        Dense {
            grad_weight: Tensor::zeros(weight.shape()),
            grad_bias: Tensor::zeros(&[out_features]),
            bias: Tensor::zeros(&[out_features]),
            weight,
            input: None,
        }
    }

    pub fn with_params(weight: Tensor, bias: Tensor) -> Result<Self> {
        if weight.rank() != 2 || bias.rank() != 1 || bias.shape()[0] != weight.shape()[0] {
            return Err(HqnnError::Shape(format!(
                "dense wants weight [out, in] and bias [out], got {:?} and {:?}",
                weight.shape(),
                bias.shape()
            )));
        }
        Ok(Dense {
            grad_weight: Tensor::zeros(weight.shape()),
            grad_bias: Tensor::zeros(bias.shape()),
            weight,
            bias,
            input: None,
        })
    }

    pub fn in_features(&self) -> usize {
        self.weight.shape()[1]
    }

    pub fn out_features(&self) -> usize {
        self.weight.shape()[0]
    }

    fn forward(&mut self, input: &Tensor) -> Result<Tensor> {
        let (out_f, in_f) = (self.out_features(), self.in_features());
        if input.rank() != 2 || input.shape()[1] != in_f {
            return Err(HqnnError::Shape(format!(
                "dense({in_f}->{out_f}) got input {:?}",
                input.shape()
            )));
        }
        let batch = input.shape()[0];
        let mut out = Tensor::zeros(&[batch, out_f]);
        let (x, w, b) = (input.data(), self.weight.data(), self.bias.data());
        let o = out.data_mut();
        for bi in 0..batch {
            for of in 0..out_f {
                let mut acc = b[of];
                for inf in 0..in_f {
                    acc += w[of * in_f + inf] * x[bi * in_f + inf];
                }
                o[bi * out_f + of] = acc;
            }
        }
        self.input = Some(input.clone());
        Ok(out)
    }

    fn backward(&mut self, grad_output: &Tensor) -> Result<Tensor> {
        let input = self.input.as_ref().ok_or_else(|| {
            HqnnError::State("dense backward before forward".into())
        })?;
        let (out_f, in_f) = (self.out_features(), self.in_features());
        let batch = input.shape()[0];
        if grad_output.shape() != [batch, out_f] {
            return Err(HqnnError::Shape(format!(
                "dense backward wants [{batch}, {out_f}], got {:?}",
                grad_output.shape()
            )));
        }
        let mut grad_input = Tensor::zeros(&[batch, in_f]);
        self.grad_weight.data_mut().fill(0.0);
        self.grad_bias.data_mut().fill(0.0);
        let (x, w, g) = (input.data(), self.weight.data(), grad_output.data());
        let gi = grad_input.data_mut();
        let gw = self.grad_weight.data_mut();
        let gb = self.grad_bias.data_mut();
        for bi in 0..batch {
            for of in 0..out_f {
                let go = g[bi * out_f + of];
                gb[of] += go;
                for inf in 0..in_f {
                    gw[of * in_f + inf] += go * x[bi * in_f + inf];
                    gi[bi * in_f + inf] += go * w[of * in_f + inf];
                }
            }
        }
        Ok(grad_input)
    }
}

/// 2D cross-correlation with square kernel, stride, zero padding, and bias.
/// Weight layout is `[out_ch, in_ch, k, k]`.
#[derive(Debug, Clone)]
pub struct Conv2D {
    in_channels: usize,
    out_channels: usize,
    kernel: usize,
    stride: usize,
    pad: usize,
    weight: Tensor,
    bias: Tensor,
    grad_weight: Tensor,
    grad_bias: Tensor,
    input: Option<Tensor>,
}

impl Conv2D {
    pub fn new(
        in_channels: usize,
        out_channels: usize,
        kernel: usize,
        stride: usize,
        pad: usize,
        rng: &mut impl Rng,
    ) -> Result<Self> {
        if in_channels == 0 || out_channels == 0 || kernel == 0 || stride == 0 {
            return Err(HqnnError::Config(
                "conv channels, kernel, and stride must be positive".into(),
            ));
        }
        let fan_in = in_channels * kernel * kernel;
        let fan_out = out_channels * kernel * kernel;
        let weight = xavier_uniform(
            &[out_channels, in_channels, kernel, kernel],
            fan_in,
            fan_out,
            rng,
        );
        Ok(Conv2D {
            in_channels,
            out_channels,
            kernel,
            stride,
            pad,
            grad_weight: Tensor::zeros(weight.shape()),
            grad_bias: Tensor::zeros(&[out_channels]),
            bias: Tensor::zeros(&[out_channels]),
            weight,
            input: None,
        })
    }

    pub fn with_params(
        weight: Tensor,
        bias: Tensor,
        stride: usize,
        pad: usize,
    ) -> Result<Self> {
        if weight.rank() != 4 || weight.shape()[2] != weight.shape()[3] {
            return Err(HqnnError::Shape(format!(
                "conv weight wants [out_ch, in_ch, k, k], got {:?}",
                weight.shape()
            )));
        }
        if bias.rank() != 1 || bias.shape()[0] != weight.shape()[0] {
            return Err(HqnnError::Shape(format!(
                "conv bias wants [{}], got {:?}",
                weight.shape()[0],
                bias.shape()
            )));
        }
        if stride == 0 {
            return Err(HqnnError::Config("conv stride must be positive".into()));
        }
        Ok(Conv2D {
            in_channels: weight.shape()[1],
            out_channels: weight.shape()[0],
            kernel: weight.shape()[2],
            stride,
            pad,
            grad_weight: Tensor::zeros(weight.shape()),
            grad_bias: Tensor::zeros(bias.shape()),
            weight,
            bias,
            input: None,
        })
    }

    fn out_spatial(&self, h: usize, w: usize) -> Result<(usize, usize)> {
        let padded_h = h + 2 * self.pad;
        let padded_w = w + 2 * self.pad;
        if padded_h < self.kernel || padded_w < self.kernel {
            return Err(HqnnError::Shape(format!(
                "kernel {} exceeds padded input {padded_h}x{padded_w}",
                self.kernel
            )));
        }
        Ok((
            (padded_h - self.kernel) / self.stride + 1,
            (padded_w - self.kernel) / self.stride + 1,
        ))
    }

    fn forward(&mut self, input: &Tensor) -> Result<Tensor> {
        if input.rank() != 4 || input.shape()[1] != self.in_channels {
            return Err(HqnnError::Shape(format!(
                "conv({}ch) got input {:?}",
                self.in_channels,
                input.shape()
            )));
        }
        let [batch, _, h, w] = [
            input.shape()[0],
            input.shape()[1],
            input.shape()[2],
            input.shape()[3],
        ];
        let (oh_n, ow_n) = self.out_spatial(h, w)?;
        let mut out = Tensor::zeros(&[batch, self.out_channels, oh_n, ow_n]);
        let (x, wt, bs) = (input.data(), self.weight.data(), self.bias.data());
        let o = out.data_mut();
        let (k, s, p) = (self.kernel, self.stride, self.pad);
        for b in 0..batch {
            for oc in 0..self.out_channels {
                for oh in 0..oh_n {
                    for ow in 0..ow_n {
                        let mut acc = bs[oc];
                        for ic in 0..self.in_channels {
                            for kh in 0..k {
                                let ih = oh * s + kh;
                                if ih < p || ih - p >= h {
                                    continue;
                                }
                                let x_row = ((b * self.in_channels + ic) * h + (ih - p)) * w;
                                let w_row = ((oc * self.in_channels + ic) * k + kh) * k;
                                for kw in 0..k {
                                    let iw = ow * s + kw;
                                    if iw < p || iw - p >= w {
                                        continue;
                                    }
                                    acc += x[x_row + (iw - p)] * wt[w_row + kw];
                                }
                            }
                        }
                        o[((b * self.out_channels + oc) * oh_n + oh) * ow_n + ow] = acc;
                    }
                }
            }
        }
        self.input = Some(input.clone());
        Ok(out)
    }

    fn backward(&mut self, grad_output: &Tensor) -> Result<Tensor> {
        let input = self.input.as_ref().ok_or_else(|| {
            HqnnError::State("conv backward before forward".into())
        })?;
        let [batch, _, h, w] = [
            input.shape()[0],
            input.shape()[1],
            input.shape()[2],
            input.shape()[3],
        ];
        let (oh_n, ow_n) = self.out_spatial(h, w)?;
        if grad_output.shape() != [batch, self.out_channels, oh_n, ow_n] {
            return Err(HqnnError::Shape(format!(
                "conv backward wants [{batch}, {}, {oh_n}, {ow_n}], got {:?}",
                self.out_channels,
                grad_output.shape()
            )));
        }
        let mut grad_input = Tensor::zeros(input.shape());
        self.grad_weight.data_mut().fill(0.0);
        self.grad_bias.data_mut().fill(0.0);
        let (x, wt, g) = (input.data(), self.weight.data(), grad_output.data());
        let gi = grad_input.data_mut();
        let gw = self.grad_weight.data_mut();
        let gb = self.grad_bias.data_mut();
        let (k, s, p) = (self.kernel, self.stride, self.pad);
        for b in 0..batch {
            for oc in 0..self.out_channels {
                for oh in 0..oh_n {
                    for ow in 0..ow_n {
                        let go = g[((b * self.out_channels + oc) * oh_n + oh) * ow_n + ow];
                        gb[oc] += go;
                        for ic in 0..self.in_channels {
                            for kh in 0..k {
                                let ih = oh * s + kh;
                                if ih < p || ih - p >= h {
                                    continue;
                                }
                                let x_row = ((b * self.in_channels + ic) * h + (ih - p)) * w;
                                let w_row = ((oc * self.in_channels + ic) * k + kh) * k;
                                for kw in 0..k {
                                    let iw = ow * s + kw;
                                    if iw < p || iw - p >= w {
                                        continue;
                                    }
                                    gw[w_row + kw] += go * x[x_row + (iw - p)];
                                    gi[x_row + (iw - p)] += go * wt[w_row + kw];
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(grad_input)
    }
}

/// Elementwise `max(0, v)`.
#[derive(Debug, Clone, Default)]
pub struct ReLU {
    positive: Option<Vec<bool>>,
    shape: Vec<usize>,
}

impl ReLU {
    pub fn new() -> Self {
        ReLU::default()
    }

    fn forward(&mut self, input: &Tensor) -> Result<Tensor> {
        self.positive = Some(input.data().iter().map(|&v| v > 0.0).collect());
        self.shape = input.shape().to_vec();
        let data = input.data().iter().map(|&v| v.max(0.0)).collect();
        Tensor::new(input.shape().to_vec(), data)
    }

    fn backward(&mut self, grad_output: &Tensor) -> Result<Tensor> {
        let positive = self.positive.as_ref().ok_or_else(|| {
            HqnnError::State("relu backward before forward".into())
        })?;
        if grad_output.shape() != self.shape {
            return Err(HqnnError::Shape(format!(
                "relu backward wants {:?}, got {:?}",
                self.shape,
                grad_output.shape()
            )));
        }
        let data = grad_output
            .data()
            .iter()
            .zip(positive)
            .map(|(&g, &pos)| if pos { g } else { 0.0 })
            .collect();
        Tensor::new(self.shape.clone(), data)
    }
}

/// Max pooling over `[batch, ch, h, w]` windows; remembers each window's
/// first maximal index for the backward pass.
#[derive(Debug, Clone)]
pub struct MaxPool2D {
    kernel: usize,
    stride: usize,
    argmax: Option<Vec<usize>>,
    in_shape: Vec<usize>,
}

impl MaxPool2D {
    pub fn new(kernel: usize, stride: usize) -> Result<Self> {
        if kernel == 0 || stride == 0 {
            return Err(HqnnError::Config(
                "pool kernel and stride must be positive".into(),
            ));
        }
        Ok(MaxPool2D { kernel, stride, argmax: None, in_shape: Vec::new() })
    }

    fn forward(&mut self, input: &Tensor) -> Result<Tensor> {
        if input.rank() != 4 {
            return Err(HqnnError::Shape(format!(
                "maxpool wants [batch, ch, h, w], got {:?}",
                input.shape()
            )));
        }
        let [batch, ch, h, w] = [
            input.shape()[0],
            input.shape()[1],
            input.shape()[2],
            input.shape()[3],
        ];
        if h < self.kernel || w < self.kernel {
            return Err(HqnnError::Shape(format!(
                "pool kernel {} exceeds input {h}x{w}",
                self.kernel
            )));
        }
        let oh_n = (h - self.kernel) / self.stride + 1;
        let ow_n = (w - self.kernel) / self.stride + 1;
        let mut out = Tensor::zeros(&[batch, ch, oh_n, ow_n]);
        let mut argmax = vec![0usize; out.len()];
        let x = input.data();
        let o = out.data_mut();
        for b in 0..batch {
            for c in 0..ch {
                let plane = (b * ch + c) * h * w;
                for oh in 0..oh_n {
                    for ow in 0..ow_n {
                        let mut best_idx = plane + (oh * self.stride) * w + ow * self.stride;
                        let mut best = x[best_idx];
                        for kh in 0..self.kernel {
                            for kw in 0..self.kernel {
                                let idx = plane
                                    + (oh * self.stride + kh) * w
                                    + (ow * self.stride + kw);
                                // Strict comparison keeps the first maximum.
                                if x[idx] > best {
                                    best = x[idx];
                                    best_idx = idx;
                                }
                            }
                        }
                        let out_idx = ((b * ch + c) * oh_n + oh) * ow_n + ow;
                        o[out_idx] = best;
                        argmax[out_idx] = best_idx;
                    }
                }
            }
        }
        self.argmax = Some(argmax);
        self.in_shape = input.shape().to_vec();
        Ok(out)
    }

    fn backward(&mut self, grad_output: &Tensor) -> Result<Tensor> {
        let argmax = self.argmax.as_ref().ok_or_else(|| {
            HqnnError::State("maxpool backward before forward".into())
        })?;
        if grad_output.len() != argmax.len() {
            return Err(HqnnError::Shape(format!(
                "maxpool backward got {} gradients for {} outputs",
                grad_output.len(),
                argmax.len()
            )));
        }
        let mut grad_input = Tensor::zeros(&self.in_shape);
        let gi = grad_input.data_mut();
        for (&src, &g) in argmax.iter().zip(grad_output.data()) {
            gi[src] += g;
        }
        Ok(grad_input)
    }
}

/// Mean over the spatial plane: `[b, c, h, w] -> [b, c, 1, 1]`.
#[derive(Debug, Clone, Default)]
pub struct GlobalAvgPool {
    in_shape: Vec<usize>,
}

impl GlobalAvgPool {
    pub fn new() -> Self {
        GlobalAvgPool::default()
    }

    fn forward(&mut self, input: &Tensor) -> Result<Tensor> {
        if input.rank() != 4 {
            return Err(HqnnError::Shape(format!(
                "global average pool wants [batch, ch, h, w], got {:?}",
                input.shape()
            )));
        }
        let [batch, ch, h, w] = [
            input.shape()[0],
            input.shape()[1],
            input.shape()[2],
            input.shape()[3],
        ];
        let mut out = Tensor::zeros(&[batch, ch, 1, 1]);
        let x = input.data();
        let o = out.data_mut();
        let plane = h * w;
        for bc in 0..batch * ch {
            let sum: f64 = x[bc * plane..(bc + 1) * plane].iter().sum();
            o[bc] = sum / plane as f64;
        }
        self.in_shape = input.shape().to_vec();
        Ok(out)
    }

    fn backward(&mut self, grad_output: &Tensor) -> Result<Tensor> {
        if self.in_shape.is_empty() {
            return Err(HqnnError::State(
                "global average pool backward before forward".into(),
            ));
        }
        let (batch, ch) = (self.in_shape[0], self.in_shape[1]);
        if grad_output.len() != batch * ch {
            return Err(HqnnError::Shape(format!(
                "global average pool backward got {} gradients for {} channels",
                grad_output.len(),
                batch * ch
            )));
        }
        let plane = self.in_shape[2] * self.in_shape[3];
        let mut grad_input = Tensor::zeros(&self.in_shape);
        let gi = grad_input.data_mut();
        for (bc, &g) in grad_output.data().iter().enumerate() {
            let share = g / plane as f64;
            gi[bc * plane..(bc + 1) * plane].fill(share);
        }
        Ok(grad_input)
    }
}

/// Collapses everything after the batch dimension: `[b, ...] -> [b, prod]`.
#[derive(Debug, Clone, Default)]
pub struct Flatten {
    in_shape: Vec<usize>,
}

impl Flatten {
    pub fn new() -> Self {
        Flatten::default()
    }

    fn forward(&mut self, input: &Tensor) -> Result<Tensor> {
        if input.rank() < 2 {
            return Err(HqnnError::Shape(format!(
                "flatten wants a batch dimension plus payload, got {:?}",
                input.shape()
            )));
        }
        self.in_shape = input.shape().to_vec();
        let batch = input.shape()[0];
        let rest: usize = input.shape()[1..].iter().product();
        input.clone().reshape(vec![batch, rest])
    }

    fn backward(&mut self, grad_output: &Tensor) -> Result<Tensor> {
        if self.in_shape.is_empty() {
            return Err(HqnnError::State("flatten backward before forward".into()));
        }
        grad_output.clone().reshape(self.in_shape.clone())
    }
}

/// Elementwise logistic function.
#[derive(Debug, Clone, Default)]
pub struct Sigmoid {
    output: Option<Tensor>,
}

impl Sigmoid {
    pub fn new() -> Self {
        Sigmoid::default()
    }

    /// Output of the most recent forward pass, if any.
    pub fn cached_output(&self) -> Option<&Tensor> {
        self.output.as_ref()
    }

    fn forward(&mut self, input: &Tensor) -> Result<Tensor> {
        let data: Vec<f64> = input
            .data()
            .iter()
            .map(|&v| 1.0 / (1.0 + (-v).exp()))
            .collect();
        let out = Tensor::new(input.shape().to_vec(), data)?;
        self.output = Some(out.clone());
        Ok(out)
    }

    fn backward(&mut self, grad_output: &Tensor) -> Result<Tensor> {
        let output = self.output.as_ref().ok_or_else(|| {
            HqnnError::State("sigmoid backward before forward".into())
        })?;
        if grad_output.shape() != output.shape() {
            return Err(HqnnError::Shape(format!(
                "sigmoid backward wants {:?}, got {:?}",
                output.shape(),
                grad_output.shape()
            )));
        }
        let data = grad_output
            .data()
            .iter()
            .zip(output.data())
            .map(|(&g, &y)| g * y * (1.0 - y))
            .collect();
        Tensor::new(output.shape().to_vec(), data)
    }
}

/// One stage of a sequential model.
#[derive(Debug, Clone)]
pub enum Layer {
    Dense(Dense),
    Conv2D(Conv2D),
    ReLU(ReLU),
    MaxPool2D(MaxPool2D),
    GlobalAvgPool(GlobalAvgPool),
    Flatten(Flatten),
    Sigmoid(Sigmoid),
}

impl Layer {
    pub fn forward(&mut self, input: &Tensor) -> Result<Tensor> {
        match self {
            Layer::Dense(l) => l.forward(input),
            Layer::Conv2D(l) => l.forward(input),
            Layer::ReLU(l) => l.forward(input),
            Layer::MaxPool2D(l) => l.forward(input),
            Layer::GlobalAvgPool(l) => l.forward(input),
            Layer::Flatten(l) => l.forward(input),
            Layer::Sigmoid(l) => l.forward(input),
        }
    }

    /// Returns grad wrt the layer input; parameter gradients are stored.
    pub fn backward(&mut self, grad_output: &Tensor) -> Result<Tensor> {
        match self {
            Layer::Dense(l) => l.backward(grad_output),
            Layer::Conv2D(l) => l.backward(grad_output),
            Layer::ReLU(l) => l.backward(grad_output),
            Layer::MaxPool2D(l) => l.backward(grad_output),
            Layer::GlobalAvgPool(l) => l.backward(grad_output),
            Layer::Flatten(l) => l.backward(grad_output),
            Layer::Sigmoid(l) => l.backward(grad_output),
        }
    }

    /// Named parameter tensors in a fixed order (weights before biases).
    pub fn params(&self) -> Vec<(&'static str, &Tensor)> {
        match self {
            Layer::Dense(l) => vec![("weight", &l.weight), ("bias", &l.bias)],
            Layer::Conv2D(l) => vec![("weight", &l.weight), ("bias", &l.bias)],
            _ => Vec::new(),
        }
    }

    pub fn params_mut(&mut self) -> Vec<(&'static str, &mut Tensor)> {
        match self {
            Layer::Dense(l) => vec![("weight", &mut l.weight), ("bias", &mut l.bias)],
            Layer::Conv2D(l) => vec![("weight", &mut l.weight), ("bias", &mut l.bias)],
            _ => Vec::new(),
        }
    }

    /// Gradients in the same order as `params`.
    pub fn grads(&self) -> Vec<(&'static str, &Tensor)> {
        match self {
            Layer::Dense(l) => vec![("weight", &l.grad_weight), ("bias", &l.grad_bias)],
            Layer::Conv2D(l) => vec![("weight", &l.grad_weight), ("bias", &l.grad_bias)],
            _ => Vec::new(),
        }
    }

    pub fn param_count(&self) -> usize {
        self.params().iter().map(|(_, t)| t.len()).sum()
    }

    pub fn describe(&self) -> String {
        match self {
            Layer::Dense(l) => format!("Dense({}->{})", l.in_features(), l.out_features()),
            Layer::Conv2D(l) => format!(
                "Conv2D({}->{}, k={}, s={}, p={})",
                l.in_channels, l.out_channels, l.kernel, l.stride, l.pad
            ),
            Layer::ReLU(_) => "ReLU".into(),
            Layer::MaxPool2D(l) => format!("MaxPool2D(k={}, s={})", l.kernel, l.stride),
            Layer::GlobalAvgPool(_) => "GlobalAvgPool".into(),
            Layer::Flatten(_) => "Flatten".into(),
            Layer::Sigmoid(_) => "Sigmoid".into(),
        }
    }
}

/// Feature-extractor configuration: a conv stack for image tensors or a
/// flatten-plus-dense head for plain vectors. `out_features` is the number
/// of scalars handed to the quantum (or classical) head.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BackboneSpec {
    Conv { out_features: usize },
    Identity { input_dim: usize, out_features: usize },
}

/// Instantiates the feature extractor with seeded initialization.
///
/// The conv variant is a compact image extractor: two conv/pool stages,
/// global average pooling, and a dense reduction to `out_features` scalars.
pub fn build_backbone(spec: &BackboneSpec, rng: &mut impl Rng) -> Result<Vec<Layer>> {
    match *spec {
        BackboneSpec::Conv { out_features } => {
            if out_features == 0 {
                return Err(HqnnError::Config("backbone output width must be positive".into()));
            }
            Ok(vec![
                Layer::Conv2D(Conv2D::new(1, 8, 3, 1, 1, rng)?),
                Layer::ReLU(ReLU::new()),
                Layer::MaxPool2D(MaxPool2D::new(2, 2)?),
                Layer::Conv2D(Conv2D::new(8, 16, 3, 1, 1, rng)?),
                Layer::ReLU(ReLU::new()),
                Layer::MaxPool2D(MaxPool2D::new(2, 2)?),
                Layer::GlobalAvgPool(GlobalAvgPool::new()),
                Layer::Flatten(Flatten::new()),
                Layer::Dense(Dense::new(16, out_features, rng)),
            ])
        }
        BackboneSpec::Identity { input_dim, out_features } => {
            if input_dim == 0 || out_features == 0 {
                return Err(HqnnError::Config("backbone widths must be positive".into()));
            }
            Ok(vec![
                Layer::Flatten(Flatten::new()),
                Layer::Dense(Dense::new(input_dim, out_features, rng)),
            ])
        }
    }
}

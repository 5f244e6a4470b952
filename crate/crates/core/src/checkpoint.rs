//! Binary model checkpoints.
//!
//! Layout, all integers little-endian:
//!
//! ```text
//! magic "HQNN" | version u32 = 1 | kind u8 (0 classical, 1 hybrid)
//! hybrid only: num_qubits u8 | feature_map_reps u8 | ansatz_reps u8 | class_count u16
//! tensor count u32
//! per tensor: name length u16 | name UTF-8 | rank u8 | dims u32 each | values f64 each
//! ```
//!
//! Tensors are named `backbone.{layer}.{weight|bias}`, `head.0.{weight|bias}`
//! (classical), and `qnn.weights` (hybrid). The backbone architecture is not
//! stored separately: a rank-4 `backbone.0.weight` selects the convolutional
//! template, a rank-2 `backbone.1.weight` the flatten + dense template, and
//! everything else is rejected. Loading restores every parameter bit-exactly.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use crate::data::Reader;
use crate::error::{HqnnError, Result};
use crate::hybrid::{ClassicalModel, HybridConfig, HybridModel, Model};
use crate::nn::{Conv2D, Dense, Flatten, GlobalAvgPool, Layer, MaxPool2D, ReLU};
use crate::tensor::Tensor;

const MAGIC: &[u8; 4] = b"HQNN";
const VERSION: u32 = 1;
const KIND_CLASSICAL: u8 = 0;
const KIND_HYBRID: u8 = 1;

fn push_tensor(out: &mut Vec<u8>, name: &str, shape: &[usize], data: &[f64]) {
    let name_len = u16::try_from(name.len()).expect("tensor names are short");
    out.extend_from_slice(&name_len.to_le_bytes());
    out.extend_from_slice(name.as_bytes());
    out.push(u8::try_from(shape.len()).expect("ranks fit a byte"));
    for &dim in shape {
        out.extend_from_slice(&u32::try_from(dim).expect("dims fit u32").to_le_bytes());
    }
    for &v in data {
        out.extend_from_slice(&v.to_le_bytes());
    }
}

fn layer_entries(prefix: &str, layers: &[Layer]) -> Vec<(String, Vec<usize>, Vec<f64>)> {
    let mut out = Vec::new();
    for (i, layer) in layers.iter().enumerate() {
        for (name, t) in layer.params() {
            out.push((format!("{prefix}.{i}.{name}"), t.shape().to_vec(), t.data().to_vec()));
        }
    }
    out
}

/// Serializes a model; the byte length doubles as its size metric.
pub fn checkpoint_bytes(model: &Model) -> Vec<u8> {
    let mut out = Vec::new();
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&VERSION.to_le_bytes());
    let mut entries;
    match model {
        Model::Hybrid(m) => {
            out.push(KIND_HYBRID);
            let c = m.config();
            out.push(u8::try_from(c.num_qubits).expect("validated at construction"));
            out.push(u8::try_from(c.feature_map_reps).expect("validated at construction"));
            out.push(u8::try_from(c.ansatz_reps).expect("validated at construction"));
            out.extend_from_slice(&c.class_count.to_le_bytes());
            entries = layer_entries("backbone", m.backbone());
            entries.push((
                "qnn.weights".into(),
                vec![m.qnn_weights().len()],
                m.qnn_weights().to_vec(),
            ));
        }
        Model::Classical(m) => {
            out.push(KIND_CLASSICAL);
            entries = layer_entries("backbone", m.backbone());
            entries.extend(layer_entries("head", m.head()));
        }
    }
    out.extend_from_slice(&u32::try_from(entries.len()).expect("few tensors").to_le_bytes());
    for (name, shape, data) in &entries {
        push_tensor(&mut out, name, shape, data);
    }
    out
}

pub fn save_checkpoint(model: &Model, path: &Path) -> Result<()> {
    fs::write(path, checkpoint_bytes(model))?;
    Ok(())
}

pub fn load_checkpoint(path: &Path) -> Result<Model> {
    parse_checkpoint(&fs::read(path)?)
}

struct NamedTensor {
    offset: u64,
    tensor: Tensor,
}

fn take_tensor(
    tensors: &mut BTreeMap<String, NamedTensor>,
    name: &str,
    end: u64,
) -> Result<Tensor> {
    tensors
        .remove(name)
        .map(|t| t.tensor)
        .ok_or_else(|| HqnnError::Format { offset: end, msg: format!("missing tensor {name}") })
}

fn build_backbone_layers(
    tensors: &mut BTreeMap<String, NamedTensor>,
    end: u64,
) -> Result<Vec<Layer>> {
    if tensors.contains_key("backbone.0.weight") {
        let w0 = take_tensor(tensors, "backbone.0.weight", end)?;
        let b0 = take_tensor(tensors, "backbone.0.bias", end)?;
        let w3 = take_tensor(tensors, "backbone.3.weight", end)?;
        let b3 = take_tensor(tensors, "backbone.3.bias", end)?;
        let w8 = take_tensor(tensors, "backbone.8.weight", end)?;
        let b8 = take_tensor(tensors, "backbone.8.bias", end)?;
        Ok(vec![
            Layer::Conv2D(Conv2D::with_params(w0, b0, 1, 1)?),
            Layer::ReLU(ReLU::new()),
            Layer::MaxPool2D(MaxPool2D::new(2, 2)?),
            Layer::Conv2D(Conv2D::with_params(w3, b3, 1, 1)?),
            Layer::ReLU(ReLU::new()),
            Layer::MaxPool2D(MaxPool2D::new(2, 2)?),
            Layer::GlobalAvgPool(GlobalAvgPool::new()),
            Layer::Flatten(Flatten::new()),
            Layer::Dense(Dense::with_params(w8, b8)?),
        ])
    } else if tensors.contains_key("backbone.1.weight") {
        let w = take_tensor(tensors, "backbone.1.weight", end)?;
        let b = take_tensor(tensors, "backbone.1.bias", end)?;
        Ok(vec![Layer::Flatten(Flatten::new()), Layer::Dense(Dense::with_params(w, b)?)])
    } else {
        Err(HqnnError::Format { offset: end, msg: "unrecognized backbone layout".into() })
    }
}

/// Deserializes a checkpoint, rejecting malformed bytes with their offset.
pub fn parse_checkpoint(buf: &[u8]) -> Result<Model> {
    let mut r = Reader::new(buf);
    let magic = r.take(4, "magic")?;
    if magic != MAGIC {
        return Err(HqnnError::Format {
            offset: 0,
            msg: format!("bad magic {magic:?}, expected {MAGIC:?}"),
        });
    }
    let version = r.u32("format version")?;
    if version != VERSION {
        return Err(HqnnError::Format {
            offset: 4,
            msg: format!("unsupported format version {version}"),
        });
    }
    let kind = r.u8("model kind")?;
    let config = match kind {
        KIND_CLASSICAL => None,
        KIND_HYBRID => {
            let num_qubits = usize::from(r.u8("qubit count")?);
            let feature_map_reps = usize::from(r.u8("feature map repetitions")?);
            let ansatz_reps = usize::from(r.u8("ansatz repetitions")?);
            let class_count = r.u16("class count")?;
            Some(HybridConfig { num_qubits, feature_map_reps, ansatz_reps, class_count })
        }
        other => {
            return Err(HqnnError::Format {
                offset: 8,
                msg: format!("unknown model kind {other}"),
            });
        }
    };
    let count = r.u32("tensor count")?;
    let mut tensors: BTreeMap<String, NamedTensor> = BTreeMap::new();
    for _ in 0..count {
        let entry_offset = r.pos() as u64;
        let name_len = usize::from(r.u16("tensor name length")?);
        let name_bytes = r.take(name_len, "tensor name")?;
        let name = std::str::from_utf8(name_bytes)
            .map_err(|_| HqnnError::Format {
                offset: entry_offset + 2,
                msg: "tensor name is not UTF-8".into(),
            })?
            .to_owned();
        let rank_offset = r.pos() as u64;
        let rank = usize::from(r.u8("tensor rank")?);
        if rank == 0 || rank > 8 {
            return Err(HqnnError::Format {
                offset: rank_offset,
                msg: format!("tensor rank {rank} outside 1..=8"),
            });
        }
        let mut shape = Vec::with_capacity(rank);
        let mut len = 1usize;
        for _ in 0..rank {
            let dim_offset = r.pos() as u64;
            let dim = r.u32("tensor dimension")? as usize;
            if dim == 0 {
                return Err(HqnnError::Format {
                    offset: dim_offset,
                    msg: "zero tensor dimension".into(),
                });
            }
            len = len.checked_mul(dim).ok_or_else(|| HqnnError::Format {
                offset: dim_offset,
                msg: "tensor dimensions overflow".into(),
            })?;
            shape.push(dim);
        }
        let mut data = Vec::with_capacity(len);
        for _ in 0..len {
            data.push(r.f64("tensor values")?);
        }
        let tensor = Tensor::new(shape, data)?;
        if tensors.insert(name.clone(), NamedTensor { offset: entry_offset, tensor }).is_some() {
            return Err(HqnnError::Format {
                offset: entry_offset,
                msg: format!("duplicate tensor {name}"),
            });
        }
    }
    if r.remaining() != 0 {
        return Err(HqnnError::Format {
            offset: r.pos() as u64,
            msg: format!("{} trailing bytes", r.remaining()),
        });
    }

    let end = buf.len() as u64;
    let backbone = build_backbone_layers(&mut tensors, end)?;
    let model = match config {
        Some(config) => {
            let weights = take_tensor(&mut tensors, "qnn.weights", end)?;
            if weights.rank() != 1 {
                return Err(HqnnError::Format {
                    offset: end,
                    msg: "qnn.weights must be rank 1".into(),
                });
            }
            Model::Hybrid(HybridModel::from_parts(backbone, weights.into_data(), config)?)
        }
        None => {
            let w = take_tensor(&mut tensors, "head.0.weight", end)?;
            let b = take_tensor(&mut tensors, "head.0.bias", end)?;
            Model::Classical(ClassicalModel::from_parts(backbone, Dense::with_params(w, b)?)?)
        }
    };
    if let Some((name, t)) = tensors.iter().next() {
        return Err(HqnnError::Format {
            offset: t.offset,
            msg: format!("unexpected tensor {name}"),
        });
    }
    Ok(model)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hybrid::TrainConfig;
    use crate::nn::BackboneSpec;
    use crate::optim::OptimizerKind;
    use crate::tensor::Tensor;

    fn identity_hybrid() -> Model {
        let spec = BackboneSpec::Identity { input_dim: 3, out_features: 1 };
        Model::new_hybrid(&spec, HybridConfig::default_head(), 11).unwrap()
    }

    fn conv_hybrid() -> Model {
        let spec = BackboneSpec::Conv { out_features: 1 };
        Model::new_hybrid(&spec, HybridConfig::default_head(), 12).unwrap()
    }

    fn conv_classical() -> Model {
        Model::new_classical(&BackboneSpec::Conv { out_features: 1 }, 13).unwrap()
    }

    #[test]
    fn round_trip_preserves_every_bit() {
        for model in [identity_hybrid(), conv_hybrid(), conv_classical()] {
            let bytes = checkpoint_bytes(&model);
            let restored = parse_checkpoint(&bytes).unwrap();
            assert_eq!(restored.kind_name(), model.kind_name());
            let before = model.flat_params();
            let after = restored.flat_params();
            assert_eq!(before.len(), after.len());
            for (a, b) in before.iter().zip(&after) {
                assert_eq!(a.to_bits(), b.to_bits());
            }
            assert_eq!(checkpoint_bytes(&restored), bytes);
        }
    }

    #[test]
    fn restored_hybrid_predicts_identically() {
        let mut model = identity_hybrid();
        let batch = Tensor::new(vec![2, 3], vec![0.1, -0.4, 0.9, 1.2, 0.0, -0.3]).unwrap();
        let before = model.forward(&batch).unwrap();
        let mut restored = parse_checkpoint(&checkpoint_bytes(&model)).unwrap();
        let Model::Hybrid(h) = &restored else { panic!("expected hybrid") };
        assert_eq!(h.config(), &HybridConfig::default_head());
        let after = restored.forward(&batch).unwrap();
        for (a, b) in before.data().iter().zip(after.data()) {
            assert_eq!(a.to_bits(), b.to_bits());
        }
    }

    #[test]
    fn save_and_load_through_files() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("model.ckpt");
        let model = conv_classical();
        save_checkpoint(&model, &path).unwrap();
        let restored = load_checkpoint(&path).unwrap();
        assert_eq!(restored.flat_params(), model.flat_params());
    }

    #[test]
    fn default_conv_checkpoint_sizes() {
        let hybrid = checkpoint_bytes(&conv_hybrid());
        let classical = checkpoint_bytes(&conv_classical());
        assert_eq!(hybrid.len(), 10338);
        assert_eq!(classical.len(), 10357);
        assert!(hybrid.len() < classical.len());
    }

    #[test]
    fn corrupt_magic_is_reported_at_offset_zero() {
        let mut bytes = checkpoint_bytes(&identity_hybrid());
        bytes[0] = b'X';
        match parse_checkpoint(&bytes) {
            Err(HqnnError::Format { offset: 0, msg }) => assert!(msg.contains("magic")),
            other => panic!("expected format error, got {other:?}"),
        }
    }

    #[test]
    fn unsupported_version_is_reported_at_offset_four() {
        let mut bytes = checkpoint_bytes(&identity_hybrid());
        bytes[4] = 9;
        match parse_checkpoint(&bytes) {
            Err(HqnnError::Format { offset: 4, msg }) => assert!(msg.contains("version")),
            other => panic!("expected format error, got {other:?}"),
        }
    }

    #[test]
    fn unknown_kind_is_reported_at_offset_eight() {
        let mut bytes = checkpoint_bytes(&identity_hybrid());
        bytes[8] = 7;
        match parse_checkpoint(&bytes) {
            Err(HqnnError::Format { offset: 8, msg }) => assert!(msg.contains("kind")),
            other => panic!("expected format error, got {other:?}"),
        }
    }

    #[test]
    fn truncation_names_the_missing_bytes() {
        let bytes = checkpoint_bytes(&identity_hybrid());
        let cut = &bytes[..bytes.len() - 3];
        match parse_checkpoint(cut) {
            Err(HqnnError::Format { offset, msg }) => {
                assert_eq!(offset, cut.len() as u64);
                assert!(msg.contains("3 more bytes"), "message was: {msg}");
            }
            other => panic!("expected format error, got {other:?}"),
        }
    }

    #[test]
    fn trailing_bytes_are_rejected() {
        let mut bytes = checkpoint_bytes(&identity_hybrid());
        let end = bytes.len() as u64;
        bytes.extend_from_slice(&[0, 0]);
        match parse_checkpoint(&bytes) {
            Err(HqnnError::Format { offset, msg }) => {
                assert_eq!(offset, end);
                assert!(msg.contains("2 trailing bytes"));
            }
            other => panic!("expected format error, got {other:?}"),
        }
    }

    #[test]
    fn invalid_class_count_fails_validation() {
        let mut bytes = checkpoint_bytes(&identity_hybrid());
        // class_count lives at offsets 12..14.
        bytes[12] = 1;
        bytes[13] = 0;
        assert!(matches!(parse_checkpoint(&bytes), Err(HqnnError::Config(_))));
    }

    #[test]
    fn missing_tensor_is_named() {
        let model = identity_hybrid();
        let bytes = checkpoint_bytes(&model);
        // Drop the final tensor (qnn.weights: 2 name len + 11 name + 1 rank
        // + 4 dim + 16 payload = 34 bytes) and patch the count down.
        let mut cut = bytes[..bytes.len() - 34].to_vec();
        let count_offset = 14;
        let count = u32::from_le_bytes(bytes[count_offset..count_offset + 4].try_into().unwrap());
        cut[count_offset..count_offset + 4].copy_from_slice(&(count - 1).to_le_bytes());
        match parse_checkpoint(&cut) {
            Err(HqnnError::Format { msg, .. }) => assert!(msg.contains("missing tensor qnn.weights")),
            other => panic!("expected format error, got {other:?}"),
        }
    }

    #[test]
    fn unexpected_tensor_is_named() {
        let bytes = checkpoint_bytes(&identity_hybrid());
        let count_offset = 14;
        let count = u32::from_le_bytes(bytes[count_offset..count_offset + 4].try_into().unwrap());
        let mut patched = bytes.clone();
        patched[count_offset..count_offset + 4].copy_from_slice(&(count + 1).to_le_bytes());
        push_tensor(&mut patched, "backbone.9.weight", &[1], &[0.5]);
        match parse_checkpoint(&patched) {
            Err(HqnnError::Format { msg, .. }) => {
                assert!(msg.contains("unexpected tensor backbone.9.weight"));
            }
            other => panic!("expected format error, got {other:?}"),
        }
    }

    #[test]
    fn non_utf8_tensor_name_is_rejected() {
        let model = conv_classical();
        let mut bytes = checkpoint_bytes(&model);
        // First tensor entry starts after the 13-byte classical header; its
        // name begins 2 bytes later.
        bytes[15] = 0xFF;
        match parse_checkpoint(&bytes) {
            Err(HqnnError::Format { offset: 15, msg }) => assert!(msg.contains("UTF-8")),
            other => panic!("expected format error, got {other:?}"),
        }
    }

    #[test]
    fn fit_checkpoints_round_trip_through_training() {
        let ds = crate::data::gen_blobs(12, 2, 3.0, 5).unwrap();
        let (train, val) = crate::data::split(&ds, 0.25, 6).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("best.ckpt");
        let spec = BackboneSpec::Identity { input_dim: 2, out_features: 1 };
        let mut model = Model::new_hybrid(&spec, HybridConfig::default_head(), 3).unwrap();
        let config = TrainConfig {
            epochs: 2,
            batch_size: 4,
            learning_rate: 0.05,
            optimizer: OptimizerKind::Sgd,
            seed: 1,
            checkpoint_path: path.clone(),
        };
        model.fit(&train, &val, &config).unwrap();
        let restored = load_checkpoint(&path).unwrap();
        assert_eq!(restored.flat_params(), model.flat_params());
    }
}

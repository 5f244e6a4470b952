//! Synthetic dataset generators and the binary dataset container.
//!
//! Two generators cover the benchmark needs: Gaussian blob vectors for
//! sanity checks, and chirp images (a bright frequency-sweep ridge over
//! noise) as a spectrogram-like image classification task.
//!
//! Generated pixel/feature values are quantized through f32 at creation so
//! the f32 file payload round-trips bit-exactly back into memory.

use std::fs;
use std::path::Path;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_distr::StandardNormal;

use crate::error::{HqnnError, Result};
use crate::tensor::Tensor;

const MAGIC: &[u8; 4] = b"HQDS";
const VERSION: u32 = 1;
/// Sample rank cap in the container (rank excludes the sample dimension).
const MAX_RANK: u8 = 8;

/// Provenance carried in memory for summaries; the binary container does not
/// persist these fields.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DatasetMeta {
    pub generator: String,
    pub seed: u64,
}

/// Labeled sample collection. Samples are `[N, ...]` with the first
/// dimension indexing samples.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    samples: Tensor,
    labels: Vec<u8>,
    class_count: u16,
    meta: DatasetMeta,
}

impl Dataset {
    pub fn new(
        samples: Tensor,
        labels: Vec<u8>,
        class_count: u16,
        meta: DatasetMeta,
    ) -> Result<Self> {
        if samples.rank() < 2 {
            return Err(HqnnError::Data(format!(
                "samples need a sample dimension plus payload, got shape {:?}",
                samples.shape()
            )));
        }
        if labels.len() != samples.shape()[0] {
            return Err(HqnnError::Data(format!(
                "{} labels for {} samples",
                labels.len(),
                samples.shape()[0]
            )));
        }
        if class_count < 2 {
            return Err(HqnnError::Data(format!(
                "class count must be at least 2, got {class_count}"
            )));
        }
        if let Some(&bad) = labels.iter().find(|&&l| u16::from(l) >= class_count) {
            return Err(HqnnError::Data(format!(
                "label {bad} outside class count {class_count}"
            )));
        }
        if let Some(bad) = samples.data().iter().find(|v| !v.is_finite()) {
            return Err(HqnnError::Data(format!("non-finite sample value {bad}")));
        }
        Ok(Dataset { samples, labels, class_count, meta })
    }

    pub fn samples(&self) -> &Tensor {
        &self.samples
    }

    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    pub fn class_count(&self) -> u16 {
        self.class_count
    }

    pub fn meta(&self) -> &DatasetMeta {
        &self.meta
    }

    /// Number of samples.
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Per-sample value count.
    pub fn sample_width(&self) -> usize {
        self.samples.len() / self.len()
    }

    /// Copies the selected rows into a batch tensor plus labels.
    pub fn batch(&self, indices: &[usize]) -> (Tensor, Vec<u8>) {
        let width = self.sample_width();
        let mut data = Vec::with_capacity(indices.len() * width);
        let mut labels = Vec::with_capacity(indices.len());
        for &i in indices {
            data.extend_from_slice(&self.samples.data()[i * width..(i + 1) * width]);
            labels.push(self.labels[i]);
        }
        let mut shape = self.samples.shape().to_vec();
        shape[0] = indices.len();
        (
            Tensor::new(shape, data).expect("batch rows match sample shape"),
            labels,
        )
    }

    fn gather(&self, indices: &[usize]) -> Dataset {
        let (samples, labels) = self.batch(indices);
        Dataset {
            samples,
            labels,
            class_count: self.class_count,
            meta: self.meta.clone(),
        }
    }
}

fn quantize(v: f64) -> f64 {
    v as f32 as f64
}

/// Two isotropic unit-variance Gaussian clusters in `dim` dimensions whose
/// means sit `separation` apart along the first axis. Class-blocked order:
/// class 0 rows first.
pub fn gen_blobs(n_per_class: usize, dim: usize, separation: f64, seed: u64) -> Result<Dataset> {
    if n_per_class == 0 || dim == 0 {
        return Err(HqnnError::Config(
            "blob generator needs n_per_class >= 1 and dim >= 1".into(),
        ));
    }
    if !separation.is_finite() || separation < 0.0 {
        return Err(HqnnError::Config(format!(
            "separation must be finite and non-negative, got {separation}"
        )));
    }
    let mut rng = StdRng::seed_from_u64(seed);
    let n = 2 * n_per_class;
    let mut data = Vec::with_capacity(n * dim);
    let mut labels = Vec::with_capacity(n);
    for class in 0..2u8 {
        let mean0 = if class == 0 { -separation / 2.0 } else { separation / 2.0 };
        for _ in 0..n_per_class {
            for d in 0..dim {
                let noise: f64 = rng.sample(StandardNormal);
                let mean = if d == 0 { mean0 } else { 0.0 };
                data.push(quantize(mean + noise));
            }
            labels.push(class);
        }
    }
    Dataset::new(
        Tensor::new(vec![n, dim], data)?,
        labels,
        2,
        DatasetMeta { generator: "blobs".into(), seed },
    )
}

/// Spectrogram-like grayscale images. Class 1 carries a bright sweep ridge
/// (amplitude exactly 1.0, thickness 1 or 2 pixels, random start, slope, and
/// curvature); class 0 is background noise only. All values lie in [0, 1].
/// Class-blocked order: class 0 rows first.
pub fn gen_chirp_images(
    n_per_class: usize,
    size: usize,
    noise_std: f64,
    seed: u64,
) -> Result<Dataset> {
    if n_per_class == 0 {
        return Err(HqnnError::Config("chirp generator needs n_per_class >= 1".into()));
    }
    if size < 16 {
        return Err(HqnnError::Config(format!(
            "chirp images need size >= 16, got {size}"
        )));
    }
    if !noise_std.is_finite() || noise_std < 0.0 {
        return Err(HqnnError::Config(format!(
            "noise std must be finite and non-negative, got {noise_std}"
        )));
    }
    let mut rng = StdRng::seed_from_u64(seed);
    let n = 2 * n_per_class;
    let plane = size * size;
    let mut data = Vec::with_capacity(n * plane);
    let mut labels = Vec::with_capacity(n);
    for class in 0..2u8 {
        for _ in 0..n_per_class {
            let start = data.len();
            for _ in 0..plane {
                let noise: f64 = rng.sample::<f64, _>(StandardNormal) * noise_std;
                data.push(quantize(noise.clamp(0.0, 1.0)));
            }
            if class == 1 {
                let y0 = rng.gen_range(0.2 * size as f64..0.8 * size as f64);
                let slope = rng.gen_range(-0.5..0.5);
                let curve = rng.gen_range(-0.25..0.25);
                let thickness = rng.gen_range(1..=2usize);
                for x in 0..size {
                    let xf = x as f64;
                    let y = y0 + slope * xf + curve * xf * xf / size as f64;
                    let row = (y.round() as i64).clamp(0, size as i64 - 1) as usize;
                    for t in 0..thickness {
                        let r = (row + t).min(size - 1);
                        data[start + r * size + x] = 1.0;
                    }
                }
            }
            labels.push(class);
        }
    }
    Dataset::new(
        Tensor::new(vec![n, 1, size, size], data)?,
        labels,
        2,
        DatasetMeta { generator: "chirp".into(), seed },
    )
}

/// Stratified split: per class, a seeded shuffle then a
/// `round(val_fraction * class_size)` cut into the validation side.
pub fn split(ds: &Dataset, val_fraction: f64, seed: u64) -> Result<(Dataset, Dataset)> {
    if !(val_fraction > 0.0 && val_fraction < 1.0) {
        return Err(HqnnError::Config(format!(
            "validation fraction must lie strictly between 0 and 1, got {val_fraction}"
        )));
    }
    let mut rng = StdRng::seed_from_u64(seed);
    let mut train_idx = Vec::new();
    let mut val_idx = Vec::new();
    for class in 0..ds.class_count() {
        let mut class_idx: Vec<usize> = (0..ds.len())
            .filter(|&i| u16::from(ds.labels()[i]) == class)
            .collect();
        class_idx.shuffle(&mut rng);
        let val_count = (val_fraction * class_idx.len() as f64).round() as usize;
        val_idx.extend_from_slice(&class_idx[..val_count]);
        train_idx.extend_from_slice(&class_idx[val_count..]);
    }
    if train_idx.is_empty() || val_idx.is_empty() {
        return Err(HqnnError::Data(format!(
            "split {val_fraction} leaves {} training and {} validation samples",
            train_idx.len(),
            val_idx.len()
        )));
    }
    train_idx.shuffle(&mut rng);
    val_idx.shuffle(&mut rng);
    Ok((ds.gather(&train_idx), ds.gather(&val_idx)))
}

/// Writes the binary container: magic "HQDS", version u32, n_samples u32,
/// class_count u16, sample rank u8, per-sample dims u32 each, payload f32
/// row-major, labels u8 per sample. Everything little-endian.
pub fn write_dataset(ds: &Dataset, path: &Path) -> Result<()> {
    let sample_shape = &ds.samples().shape()[1..];
    let mut buf = Vec::with_capacity(24 + ds.samples().len() * 4 + ds.len());
    buf.extend_from_slice(MAGIC);
    buf.extend_from_slice(&VERSION.to_le_bytes());
    buf.extend_from_slice(&(ds.len() as u32).to_le_bytes());
    buf.extend_from_slice(&ds.class_count().to_le_bytes());
    buf.push(sample_shape.len() as u8);
    for &d in sample_shape {
        buf.extend_from_slice(&(d as u32).to_le_bytes());
    }
    for &v in ds.samples().data() {
        buf.extend_from_slice(&(v as f32).to_le_bytes());
    }
    buf.extend_from_slice(ds.labels());
    fs::write(path, buf)?;
    Ok(())
}

/// Byte cursor over a serialized container; every failure reports the
/// offset of the first inconsistency.
pub(crate) struct Reader<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    pub(crate) fn new(buf: &'a [u8]) -> Self {
        Reader { buf, pos: 0 }
    }

    pub(crate) fn pos(&self) -> usize {
        self.pos
    }

    pub(crate) fn remaining(&self) -> usize {
        self.buf.len() - self.pos
    }

    pub(crate) fn take(&mut self, n: usize, what: &str) -> Result<&'a [u8]> {
        if self.pos + n > self.buf.len() {
            return Err(HqnnError::Format {
                offset: self.buf.len() as u64,
                msg: format!(
                    "truncated: {} more bytes needed for {what}",
                    self.pos + n - self.buf.len()
                ),
            });
        }
        let slice = &self.buf[self.pos..self.pos + n];
        self.pos += n;
        Ok(slice)
    }

    pub(crate) fn u32(&mut self, what: &str) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4, what)?.try_into().unwrap()))
    }

    pub(crate) fn u16(&mut self, what: &str) -> Result<u16> {
        Ok(u16::from_le_bytes(self.take(2, what)?.try_into().unwrap()))
    }

    pub(crate) fn u8(&mut self, what: &str) -> Result<u8> {
        Ok(self.take(1, what)?[0])
    }

    pub(crate) fn f64(&mut self, what: &str) -> Result<f64> {
        Ok(f64::from_le_bytes(self.take(8, what)?.try_into().unwrap()))
    }
}

/// Reads a container written by `write_dataset`, rejecting malformed or
/// trailing bytes with the offset of the first inconsistency.
pub fn read_dataset(path: &Path) -> Result<Dataset> {
    let buf = fs::read(path)?;
    let mut r = Reader::new(&buf);

    let magic_at = r.pos as u64;
    if r.take(4, "magic")? != MAGIC {
        return Err(HqnnError::Format {
            offset: magic_at,
            msg: "bad magic, expected \"HQDS\"".into(),
        });
    }
    let version_at = r.pos as u64;
    let version = r.u32("version")?;
    if version != VERSION {
        return Err(HqnnError::Format {
            offset: version_at,
            msg: format!("unsupported version {version}, expected {VERSION}"),
        });
    }
    let count_at = r.pos as u64;
    let n_samples = r.u32("sample count")? as usize;
    if n_samples == 0 {
        return Err(HqnnError::Format {
            offset: count_at,
            msg: "sample count is zero".into(),
        });
    }
    let classes_at = r.pos as u64;
    let class_count = r.u16("class count")?;
    if class_count < 2 {
        return Err(HqnnError::Format {
            offset: classes_at,
            msg: format!("class count {class_count} below 2"),
        });
    }
    let rank_at = r.pos as u64;
    let rank = r.u8("sample rank")?;
    if rank == 0 || rank > MAX_RANK {
        return Err(HqnnError::Format {
            offset: rank_at,
            msg: format!("sample rank {rank} outside 1..={MAX_RANK}"),
        });
    }
    let mut shape = vec![n_samples];
    for i in 0..rank {
        let dim_at = r.pos as u64;
        let d = r.u32(&format!("dimension {i}"))? as usize;
        if d == 0 {
            return Err(HqnnError::Format {
                offset: dim_at,
                msg: format!("dimension {i} is zero"),
            });
        }
        shape.push(d);
    }
    let total: usize = shape.iter().product();
    let payload_at = r.pos;
    let payload = r.take(total * 4, "sample payload")?;
    let mut data = Vec::with_capacity(total);
    for (i, chunk) in payload.chunks_exact(4).enumerate() {
        let v = f32::from_le_bytes(chunk.try_into().unwrap());
        if !v.is_finite() {
            return Err(HqnnError::Format {
                offset: (payload_at + i * 4) as u64,
                msg: format!("non-finite sample value {v}"),
            });
        }
        data.push(f64::from(v));
    }
    let labels_at = r.pos;
    let labels = r.take(n_samples, "labels")?.to_vec();
    if let Some(i) = labels.iter().position(|&l| u16::from(l) >= class_count) {
        return Err(HqnnError::Format {
            offset: (labels_at + i) as u64,
            msg: format!("label {} outside class count {class_count}", labels[i]),
        });
    }
    if r.pos != buf.len() {
        return Err(HqnnError::Format {
            offset: r.pos as u64,
            msg: format!("{} unexpected trailing bytes", buf.len() - r.pos),
        });
    }
    Dataset::new(
        Tensor::new(shape, data).map_err(|e| HqnnError::Data(e.to_string()))?,
        labels,
        class_count,
        DatasetMeta { generator: "file".into(), seed: 0 },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use tempfile::tempdir;

    #[test]
    fn blobs_are_seed_deterministic() {
        let a = gen_blobs(10, 3, 2.0, 7).unwrap();
        let b = gen_blobs(10, 3, 2.0, 7).unwrap();
        assert_eq!(a, b);
        let c = gen_blobs(10, 3, 2.0, 8).unwrap();
        assert_ne!(a.samples().data(), c.samples().data());
    }

    #[test]
    fn blobs_shape_and_balance() {
        let ds = gen_blobs(25, 2, 4.0, 1).unwrap();
        assert_eq!(ds.samples().shape(), &[50, 2]);
        assert_eq!(ds.labels().iter().filter(|&&l| l == 0).count(), 25);
        assert_eq!(ds.labels().iter().filter(|&&l| l == 1).count(), 25);
    }

    #[test]
    fn blobs_cluster_means_are_separated() {
        let sep = 6.0;
        let ds = gen_blobs(500, 2, sep, 3).unwrap();
        let mean_axis0 = |class: u8| -> f64 {
            let vals: Vec<f64> = (0..ds.len())
                .filter(|&i| ds.labels()[i] == class)
                .map(|i| ds.samples().data()[i * 2])
                .collect();
            vals.iter().sum::<f64>() / vals.len() as f64
        };
        let (m0, m1) = (mean_axis0(0), mean_axis0(1));
        // Unit variance, 500 samples: means are within ~0.15 of the target.
        assert!((m0 + sep / 2.0).abs() < 0.2, "class0 mean {m0}");
        assert!((m1 - sep / 2.0).abs() < 0.2, "class1 mean {m1}");
    }

    #[test]
    fn blobs_values_survive_f32_round_trip() {
        let ds = gen_blobs(10, 2, 1.0, 5).unwrap();
        for &v in ds.samples().data() {
            assert_eq!(v, v as f32 as f64);
        }
    }

    #[test]
    fn blobs_reject_bad_parameters() {
        assert!(matches!(gen_blobs(0, 2, 1.0, 0), Err(HqnnError::Config(_))));
        assert!(matches!(gen_blobs(1, 0, 1.0, 0), Err(HqnnError::Config(_))));
        assert!(matches!(gen_blobs(1, 2, -1.0, 0), Err(HqnnError::Config(_))));
        assert!(matches!(gen_blobs(1, 2, f64::NAN, 0), Err(HqnnError::Config(_))));
    }

    #[test]
    fn noiseless_chirps_are_binary() {
        let ds = gen_chirp_images(20, 16, 0.0, 11).unwrap();
        assert_eq!(ds.samples().shape(), &[40, 1, 16, 16]);
        let width = ds.sample_width();
        for i in 0..ds.len() {
            let pixels = &ds.samples().data()[i * width..(i + 1) * width];
            let max = pixels.iter().cloned().fold(0.0, f64::max);
            if ds.labels()[i] == 1 {
                assert_eq!(max, 1.0, "sample {i} lost its ridge");
            } else {
                assert!(pixels.iter().all(|&p| p == 0.0), "sample {i} has stray pixels");
            }
        }
    }

    #[test]
    fn chirp_values_stay_in_unit_range() {
        let ds = gen_chirp_images(10, 16, 0.3, 2).unwrap();
        assert!(ds.samples().data().iter().all(|&v| (0.0..=1.0).contains(&v)));
    }

    #[test]
    fn chirp_class_one_is_brighter() {
        let ds = gen_chirp_images(50, 32, 0.1, 4).unwrap();
        let width = ds.sample_width();
        let mean_of = |class: u8| -> f64 {
            let mut sum = 0.0;
            let mut count = 0usize;
            for i in 0..ds.len() {
                if ds.labels()[i] == class {
                    sum += ds.samples().data()[i * width..(i + 1) * width]
                        .iter()
                        .sum::<f64>();
                    count += width;
                }
            }
            sum / count as f64
        };
        assert!(mean_of(1) > mean_of(0));
    }

    #[test]
    fn chirps_are_seed_deterministic() {
        let a = gen_chirp_images(5, 16, 0.1, 9).unwrap();
        let b = gen_chirp_images(5, 16, 0.1, 9).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn chirps_reject_small_sizes() {
        assert!(matches!(gen_chirp_images(5, 15, 0.1, 0), Err(HqnnError::Config(_))));
        assert!(matches!(gen_chirp_images(0, 16, 0.1, 0), Err(HqnnError::Config(_))));
    }

    #[test]
    fn dataset_validates_labels() {
        let t = Tensor::new(vec![2, 1], vec![0.0, 1.0]).unwrap();
        let meta = DatasetMeta { generator: "test".into(), seed: 0 };
        assert!(Dataset::new(t.clone(), vec![0, 1], 2, meta.clone()).is_ok());
        assert!(matches!(
            Dataset::new(t.clone(), vec![0, 2], 2, meta.clone()),
            Err(HqnnError::Data(_))
        ));
        assert!(matches!(
            Dataset::new(t, vec![0], 2, meta),
            Err(HqnnError::Data(_))
        ));
    }

    #[test]
    fn file_round_trip_is_bit_exact() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("blobs.hqds");
        let ds = gen_blobs(8, 3, 2.0, 13).unwrap();
        write_dataset(&ds, &path).unwrap();
        let back = read_dataset(&path).unwrap();
        assert_eq!(back.samples().shape(), ds.samples().shape());
        assert_eq!(back.labels(), ds.labels());
        assert_eq!(back.class_count(), ds.class_count());
        let bits = |t: &Tensor| -> Vec<u64> { t.data().iter().map(|v| v.to_bits()).collect() };
        assert_eq!(bits(back.samples()), bits(ds.samples()));
    }

    #[test]
    fn image_file_round_trip() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("chirp.hqds");
        let ds = gen_chirp_images(4, 16, 0.2, 21).unwrap();
        write_dataset(&ds, &path).unwrap();
        let back = read_dataset(&path).unwrap();
        assert_eq!(back.samples(), ds.samples());
        assert_eq!(back.labels(), ds.labels());
    }

    #[test]
    fn reader_rejects_bad_magic() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("bad.hqds");
        let ds = gen_blobs(2, 1, 1.0, 0).unwrap();
        write_dataset(&ds, &path).unwrap();
        let mut bytes = fs::read(&path).unwrap();
        bytes[0] = b'X';
        fs::write(&path, &bytes).unwrap();
        match read_dataset(&path) {
            Err(HqnnError::Format { offset: 0, .. }) => {}
            other => panic!("expected format error at offset 0, got {other:?}"),
        }
    }

    #[test]
    fn reader_rejects_bad_version() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("bad.hqds");
        write_dataset(&gen_blobs(2, 1, 1.0, 0).unwrap(), &path).unwrap();
        let mut bytes = fs::read(&path).unwrap();
        bytes[4] = 9;
        fs::write(&path, &bytes).unwrap();
        match read_dataset(&path) {
            Err(HqnnError::Format { offset: 4, .. }) => {}
            other => panic!("expected format error at offset 4, got {other:?}"),
        }
    }

    #[test]
    fn reader_names_missing_bytes_on_truncation() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("trunc.hqds");
        write_dataset(&gen_blobs(2, 2, 1.0, 0).unwrap(), &path).unwrap();
        let bytes = fs::read(&path).unwrap();
        fs::write(&path, &bytes[..bytes.len() - 3]).unwrap();
        match read_dataset(&path) {
            Err(HqnnError::Format { offset, msg }) => {
                assert_eq!(offset, bytes.len() as u64 - 3);
                assert!(msg.contains("3 more bytes"), "message was: {msg}");
            }
            other => panic!("expected truncation error, got {other:?}"),
        }
    }

    #[test]
    fn reader_rejects_trailing_bytes() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("trail.hqds");
        write_dataset(&gen_blobs(2, 1, 1.0, 0).unwrap(), &path).unwrap();
        let mut bytes = fs::read(&path).unwrap();
        let clean_len = bytes.len() as u64;
        bytes.push(0xAB);
        fs::write(&path, &bytes).unwrap();
        match read_dataset(&path) {
            Err(HqnnError::Format { offset, msg }) => {
                assert_eq!(offset, clean_len);
                assert!(msg.contains("trailing"));
            }
            other => panic!("expected trailing-bytes error, got {other:?}"),
        }
    }

    #[test]
    fn reader_rejects_out_of_range_label() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("label.hqds");
        write_dataset(&gen_blobs(2, 1, 1.0, 0).unwrap(), &path).unwrap();
        let mut bytes = fs::read(&path).unwrap();
        let last = bytes.len() - 1;
        bytes[last] = 7;
        fs::write(&path, &bytes).unwrap();
        match read_dataset(&path) {
            Err(HqnnError::Format { offset, msg }) => {
                assert_eq!(offset, last as u64);
                assert!(msg.contains("label 7"));
            }
            other => panic!("expected label error, got {other:?}"),
        }
    }

    #[test]
    fn split_partitions_and_stratifies() {
        let ds = gen_blobs(50, 2, 3.0, 17).unwrap();
        let (train, val) = split(&ds, 0.2, 5).unwrap();
        assert_eq!(train.len(), 80);
        assert_eq!(val.len(), 20);
        for part in [&train, &val] {
            let zeros = part.labels().iter().filter(|&&l| l == 0).count();
            let ones = part.labels().iter().filter(|&&l| l == 1).count();
            assert!((zeros as i64 - ones as i64).abs() <= 1);
        }
    }

    #[test]
    fn split_is_seed_deterministic() {
        let ds = gen_blobs(20, 2, 3.0, 17).unwrap();
        let (a_train, a_val) = split(&ds, 0.25, 3).unwrap();
        let (b_train, b_val) = split(&ds, 0.25, 3).unwrap();
        assert_eq!(a_train, b_train);
        assert_eq!(a_val, b_val);
    }

    #[test]
    fn split_rejects_empty_sides() {
        let ds = gen_blobs(1, 2, 3.0, 17).unwrap();
        assert!(matches!(split(&ds, 0.2, 0), Err(HqnnError::Data(_))));
        assert!(matches!(split(&ds, 1.5, 0), Err(HqnnError::Config(_))));
        assert!(matches!(split(&ds, 0.0, 0), Err(HqnnError::Config(_))));
    }
}

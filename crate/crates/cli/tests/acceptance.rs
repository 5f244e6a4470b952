//! Top-level acceptance suite. Each test covers one release criterion and
//! prints a single `acceptance <name>: PASS|FAIL` line (visible with
//! `cargo test --test acceptance -- --nocapture`).

use std::path::Path;
use std::process::{Command, Output};
use std::time::Instant;

use hqnn_core::data::{gen_blobs, split};
use hqnn_core::gradcheck::{run_gradcheck, Fault, NN_REL_TOL, QNN_ABS_TOL};
use hqnn_core::hybrid::{HybridConfig, Model, TrainConfig};
use hqnn_core::nn::BackboneSpec;
use hqnn_core::optim::OptimizerKind;
use hqnn_core::qnn::classifier_head;
use hqnn_core::statevec::{Gate, Statevector};
use hqnn_core::tensor::Tensor;
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn verdict(name: &str, problems: &[String]) {
    let status = if problems.is_empty() { "PASS" } else { "FAIL" };
    println!("acceptance {name}: {status}");
    assert!(problems.is_empty(), "acceptance {name} failed:\n{}", problems.join("\n"));
}

fn hqnn(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hqnn"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary starts")
}

// Independent dense oracle: every gate as an explicit 2^n x 2^n matrix,
// circuits as matrix products. Outcome index bit j is qubit j.
type Matrix = Vec<Vec<Complex64>>;

fn zeros(dim: usize) -> Matrix {
    vec![vec![Complex64::new(0.0, 0.0); dim]; dim]
}

fn matmul(a: &Matrix, b: &Matrix) -> Matrix {
    let dim = a.len();
    let mut out = zeros(dim);
    for i in 0..dim {
        for k in 0..dim {
            if a[i][k] == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..dim {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

#[allow(clippy::needless_range_loop)]
fn embed_single(n: usize, target: usize, g: [[Complex64; 2]; 2]) -> Matrix {
    let dim = 1usize << n;
    let mask = 1usize << target;
    let mut m = zeros(dim);
    for col in 0..dim {
        let bit = (col >> target) & 1;
        let low = col & !mask;
        m[low][col] += g[0][bit];
        m[low | mask][col] += g[1][bit];
    }
    m
}

#[allow(clippy::needless_range_loop)]
fn gate_matrix(n: usize, gate: &Gate) -> Matrix {
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    match *gate {
        Gate::H { target } => {
            let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
            embed_single(n, target, [[s, s], [s, -s]])
        }
        Gate::Ry { target, angle } => {
            let (sin, cos) = (angle / 2.0).sin_cos();
            let c = Complex64::new(cos, 0.0);
            let s = Complex64::new(sin, 0.0);
            embed_single(n, target, [[c, -s], [s, c]])
        }
        Gate::Rz { target, angle } => {
            let minus = Complex64::from_polar(1.0, -angle / 2.0);
            let plus = Complex64::from_polar(1.0, angle / 2.0);
            embed_single(n, target, [[minus, zero], [zero, plus]])
        }
        Gate::Cnot { control, target } => {
            let dim = 1usize << n;
            let mut m = zeros(dim);
            for col in 0..dim {
                let row = if (col >> control) & 1 == 1 { col ^ (1 << target) } else { col };
                m[row][col] = one;
            }
            m
        }
    }
}

fn random_circuit(rng: &mut StdRng, n: usize, depth: usize) -> Vec<Gate> {
    (0..depth)
        .map(|_| {
            let kinds = if n >= 2 { 4 } else { 3 };
            match rng.gen_range(0..kinds) {
                0 => Gate::H { target: rng.gen_range(0..n) },
                1 => Gate::Ry { target: rng.gen_range(0..n), angle: rng.gen_range(-3.2..3.2) },
                2 => Gate::Rz { target: rng.gen_range(0..n), angle: rng.gen_range(-3.2..3.2) },
                _ => {
                    let control = rng.gen_range(0..n);
                    let mut target = rng.gen_range(0..n);
                    while target == control {
                        target = rng.gen_range(0..n);
                    }
                    Gate::Cnot { control, target }
                }
            }
        })
        .collect()
}

#[test]
fn quantum_oracle_equivalence() {
    let mut problems = Vec::new();
    let started = Instant::now();
    for k in 0..100u64 {
        let mut rng = StdRng::seed_from_u64(5000 + k);
        let n = 1 + (k as usize) % 3;
        let depth = rng.gen_range(1..=20);
        let gates = random_circuit(&mut rng, n, depth);

        let mut sv = Statevector::zero(n).unwrap();
        sv.run_circuit(&gates).unwrap();

        let dim = 1usize << n;
        let unitary = gates
            .iter()
            .fold(identity_matrix(dim), |acc, gate| matmul(&gate_matrix(n, gate), &acc));
        for (i, amp) in sv.amplitudes().iter().enumerate() {
            // The oracle state is column 0 of the circuit unitary.
            let diff = (*amp - unitary[i][0]).norm();
            if diff > 1e-12 {
                problems.push(format!("circuit {k} amplitude {i} off by {diff:.3e}"));
            }
        }
    }
    let elapsed = started.elapsed().as_secs_f64();
    if elapsed >= 5.0 {
        problems.push(format!("oracle comparison took {elapsed:.2}s, budget is 5s"));
    }
    verdict("quantum-oracle-equivalence", &problems);
}

fn identity_matrix(dim: usize) -> Matrix {
    let mut m = zeros(dim);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Complex64::new(1.0, 0.0);
    }
    m
}

#[test]
fn closed_form_head() {
    let mut problems = Vec::new();
    let qnn = classifier_head(1, 1, 1).unwrap();
    let mut rng = StdRng::seed_from_u64(61);
    for _ in 0..100 {
        let x: f64 = rng.gen_range(-3.0..3.0);
        let t0: f64 = rng.gen_range(-3.0..3.0);
        let t1: f64 = rng.gen_range(-3.0..3.0);
        let p1 = qnn.forward(&[x], &[t0, t1]).unwrap().probs()[1];
        let formula = (1.0 + (t0 + t1).sin() * (2.0 * x).cos()) / 2.0;
        let diff = (p1 - formula).abs();
        if diff > 1e-12 {
            problems.push(format!("x={x} t0={t0} t1={t1}: off by {diff:.3e}"));
        }
    }
    verdict("closed-form-head", &problems);
}

#[test]
fn parameter_shift_fidelity() {
    let mut problems = Vec::new();
    if QNN_ABS_TOL != 1e-6 {
        problems.push(format!("quantum tolerance drifted to {QNN_ABS_TOL}"));
    }
    let report = run_gradcheck(7, Fault::None).unwrap();
    let quantum: Vec<_> =
        report.components.iter().filter(|c| c.name.starts_with("qnn/")).collect();
    let configs: usize = quantum.iter().map(|c| c.configs).sum();
    if configs < 50 {
        problems.push(format!("only {configs} quantum configurations, need at least 50"));
    }
    if !quantum.iter().any(|c| c.name == "qnn/shared") {
        problems.push("no shared-parameter component in the report".into());
    }
    for c in &quantum {
        if !c.passed {
            problems.push(format!("{} failed with ratio {:.3}", c.name, c.error_ratio));
        }
    }

    let dir = tempfile::tempdir().unwrap();
    let out = hqnn(dir.path(), &["gradcheck"]);
    if out.status.code() != Some(0) {
        problems.push(format!("gradcheck binary exited with {:?}", out.status.code()));
    }
    verdict("parameter-shift-fidelity", &problems);
}

#[test]
fn classical_gradient_fidelity() {
    let mut problems = Vec::new();
    if NN_REL_TOL != 1e-4 {
        problems.push(format!("network tolerance drifted to {NN_REL_TOL}"));
    }
    let report = run_gradcheck(7, Fault::None).unwrap();
    let wanted = [
        "nn/dense",
        "nn/conv2d",
        "nn/relu",
        "nn/maxpool",
        "nn/gap",
        "nn/sigmoid",
        "hybrid/end-to-end",
    ];
    for name in wanted {
        match report.components.iter().find(|c| c.name == name) {
            None => problems.push(format!("component {name} missing from the report")),
            Some(c) if !c.passed => {
                problems.push(format!("{name} failed with ratio {:.3}", c.error_ratio));
            }
            Some(_) => {}
        }
    }
    verdict("classical-gradient-fidelity", &problems);
}

#[test]
fn decision_rule() {
    let mut problems = Vec::new();

    // Identity-backbone hybrid with the dense layer pinned to w=1, b=0, so
    // the head sees the raw input and P(1) = (1 + sin(t) cos(2x)) / 2.
    let spec = BackboneSpec::Identity { input_dim: 1, out_features: 1 };
    let mut model = Model::new_hybrid(&spec, HybridConfig::default_head(), 3).unwrap();
    for t in [-1.0, -0.25, 0.0, 0.25, 1.0] {
        for x in [-1.2, -0.4, 0.0, 0.4, 1.2] {
            model.set_flat_params(&[1.0, 0.0, t, 0.0]).unwrap();
            let batch = Tensor::new(vec![1, 1], vec![x]).unwrap();
            let probs = model.forward(&batch).unwrap();
            let (p0, p1) = (probs.data()[0], probs.data()[1]);
            let expected: u8 = if p0 > p1 { 0 } else { 1 };
            let got = model.predict(&batch).unwrap()[0];
            if got != expected {
                problems.push(format!(
                    "t={t} x={x}: P(0)={p0} P(1)={p1}, predicted {got}, rule says {expected}"
                ));
            }
            if t == 0.0 && p0 != p1 {
                problems.push(format!("t=0 x={x} should tie exactly, got {p0} vs {p1}"));
            }
            if t == 0.0 && got != 1 {
                problems.push(format!("tie at x={x} must resolve to class 1, got {got}"));
            }
        }
    }

    // Classical twin with all-zero head: sigmoid(0) is exactly one half.
    let mut classical = Model::new_classical(&spec, 3).unwrap();
    classical.set_flat_params(&[1.0, 0.0, 0.0, 0.0]).unwrap();
    let batch = Tensor::new(vec![1, 1], vec![0.7]).unwrap();
    let probs = classical.forward(&batch).unwrap();
    if probs.data()[0] != 0.5 || probs.data()[1] != 0.5 {
        problems.push(format!("zeroed sigmoid head gave {:?}, wanted an exact tie", probs.data()));
    }
    if classical.predict(&batch).unwrap()[0] != 1 {
        problems.push("classical exact tie did not resolve to class 1".into());
    }
    verdict("decision-rule", &problems);
}

#[test]
fn parameter_accounting() {
    let mut problems = Vec::new();

    let spec = BackboneSpec::Conv { out_features: 1 };
    let model = Model::new_hybrid(&spec, HybridConfig::default_head(), 9).unwrap();
    if model.quantum_weight_count() != 2 {
        problems.push(format!(
            "default head has {} quantum weights, wanted 2",
            model.quantum_weight_count()
        ));
    }
    let Model::Hybrid(hybrid) = &model else { unreachable!() };
    let mut layers = hybrid.backbone().to_vec();
    let mut rng = StdRng::seed_from_u64(10);
    let mut t = Tensor::new(vec![2, 1, 32, 32], (0..2048).map(|_| rng.gen()).collect()).unwrap();
    for layer in &mut layers {
        t = layer.forward(&t).unwrap();
    }
    if t.shape() != [2, 1] {
        problems.push(format!("backbone output shape {:?}, wanted [2, 1]", t.shape()));
    }

    for n in 1..=6usize {
        for r in 1..=3usize {
            let circuit = hqnn_core::circuits::real_amplitudes(n, r).unwrap();
            let weights = circuit.weight_params().len();
            if weights != n * (r + 1) {
                problems.push(format!(
                    "real_amplitudes({n},{r}) has {weights} weights, wanted {}",
                    n * (r + 1)
                ));
            }
        }
    }
    verdict("parameter-accounting", &problems);
}

#[test]
fn desk_scale_experiment() {
    let mut problems = Vec::new();
    let dir = tempfile::tempdir().unwrap();
    let started = Instant::now();

    let gen = hqnn(
        dir.path(),
        &[
            "generate", "--kind", "chirp", "--n", "1000", "--size", "32", "--noise", "0.1",
            "--seed", "42", "--out", "chirps.hqds",
        ],
    );
    assert_eq!(gen.status.code(), Some(0), "{}", String::from_utf8_lossy(&gen.stderr));

    for kind in ["hybrid", "classical"] {
        let out = hqnn(
            dir.path(),
            &[
                "train", "--dataset", "chirps.hqds", "--kind", kind, "--epochs", "12",
                "--batch-size", "32", "--lr", "0.005", "--checkpoint", &format!("{kind}.ckpt"),
                "--metrics", &format!("{kind}.jsonl"),
            ],
        );
        if out.status.code() != Some(0) {
            problems.push(format!(
                "{kind} training failed: {}",
                String::from_utf8_lossy(&out.stderr)
            ));
            continue;
        }
        let metrics = std::fs::read_to_string(dir.path().join(format!("{kind}.jsonl"))).unwrap();
        let accuracies: Vec<f64> = metrics
            .lines()
            .map(|l| serde_json::from_str::<serde_json::Value>(l).unwrap()["val_accuracy"]
                .as_f64()
                .unwrap())
            .collect();
        let best = accuracies.iter().copied().fold(0.0f64, f64::max);
        if accuracies.len() > 30 {
            problems.push(format!("{kind} ran {} epochs, budget is 30", accuracies.len()));
        }
        if best < 0.95 {
            problems.push(format!("{kind} peaked at {best:.4} validation accuracy, need 0.95"));
        }
    }

    let elapsed = started.elapsed().as_secs_f64();
    if elapsed >= 600.0 {
        problems.push(format!("experiment took {elapsed:.0}s, budget is 600s"));
    }

    let compare = hqnn(
        dir.path(),
        &[
            "compare",
            "--hybrid-checkpoint", "hybrid.ckpt",
            "--classical-checkpoint", "classical.ckpt",
            "--hybrid-metrics", "hybrid.jsonl",
            "--classical-metrics", "classical.jsonl",
            "--dataset", "chirps.hqds",
            "--out", "compare.json",
        ],
    );
    if compare.status.code() != Some(0) {
        problems.push(format!(
            "compare failed: {}",
            String::from_utf8_lossy(&compare.stderr)
        ));
    } else {
        let table = String::from_utf8_lossy(&compare.stdout).to_string();
        for row in ["Accuracy (%)", "Runtime (sec)", "Model Size (bytes)"] {
            if !table.contains(row) {
                problems.push(format!("comparison table is missing the '{row}' row"));
            }
        }
        let json: serde_json::Value = serde_json::from_str(
            &std::fs::read_to_string(dir.path().join("compare.json")).unwrap(),
        )
        .unwrap();
        let hybrid_size = json["hybrid"]["model_size_bytes"].as_u64().unwrap();
        let classical_size = json["classical"]["model_size_bytes"].as_u64().unwrap();
        if hybrid_size > classical_size {
            problems.push(format!(
                "hybrid checkpoint ({hybrid_size} bytes) outgrew the classical one ({classical_size} bytes)"
            ));
        }
    }
    verdict("desk-scale-experiment", &problems);
}

#[test]
fn determinism_and_checkpointing() {
    let mut problems = Vec::new();
    let ds = gen_blobs(60, 2, 8.0, 5).unwrap();
    let (train, val) = split(&ds, 0.25, 9).unwrap();

    let run = |dir: &Path| {
        let spec = BackboneSpec::Identity { input_dim: 2, out_features: 1 };
        let mut model = Model::new_hybrid(&spec, HybridConfig::default_head(), 4).unwrap();
        let config = TrainConfig {
            epochs: 4,
            batch_size: 16,
            learning_rate: 0.05,
            optimizer: OptimizerKind::Adam,
            seed: 7,
            checkpoint_path: dir.join("best.ckpt"),
        };
        let records = model.fit(&train, &val, &config).unwrap();
        (model, records)
    };
    let dir_a = tempfile::tempdir().unwrap();
    let dir_b = tempfile::tempdir().unwrap();
    let (mut model, records_a) = run(dir_a.path());
    let (_, records_b) = run(dir_b.path());

    for (a, b) in records_a.iter().zip(&records_b) {
        let same = a.train_loss.to_bits() == b.train_loss.to_bits()
            && a.val_loss.to_bits() == b.val_loss.to_bits()
            && a.val_accuracy.to_bits() == b.val_accuracy.to_bits();
        if !same {
            problems.push(format!("epoch {} metrics differ between identical runs", a.epoch));
        }
    }

    let bytes = model.checkpoint_bytes();
    let reloaded = hqnn_core::checkpoint::load_checkpoint(&dir_a.path().join("best.ckpt")).unwrap();
    if reloaded.checkpoint_bytes() != bytes {
        problems.push("checkpoint round-trip changed the serialized bytes".into());
    }

    let best = records_a.iter().map(|r| r.val_accuracy).fold(f64::NEG_INFINITY, f64::max);
    let replayed = model.evaluate(&val).unwrap().accuracy;
    if replayed.to_bits() != best.to_bits() {
        problems.push(format!(
            "reloaded best checkpoint scores {replayed}, training recorded {best}"
        ));
    }
    verdict("determinism-and-checkpointing", &problems);
}

#[test]
fn sampling_statistics() {
    let mut problems = Vec::new();
    let shots = 100_000u64;
    let sigma = (0.25 / shots as f64).sqrt();
    let mut within = 0usize;
    for seed in 0..100u64 {
        let mut sv = Statevector::zero(1).unwrap();
        sv.run_circuit(&[Gate::H { target: 0 }]).unwrap();
        let counts = sv.sample_counts(shots, seed);
        let freq = counts.get(&1).copied().unwrap_or(0) as f64 / shots as f64;
        if (freq - 0.5).abs() <= 3.0 * sigma {
            within += 1;
        }
    }
    if within < 99 {
        problems.push(format!("only {within}/100 seeds within the 3-sigma band"));
    }
    verdict("sampling-statistics", &problems);
}

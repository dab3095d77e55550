use std::f64::consts::PI;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

use jade::io::read_density_csv;

fn jade(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jade"))
        .arg("--out-dir")
        .arg(dir)
        .args(args)
        .output()
        .expect("run jade")
}

fn ok(dir: &Path, args: &[&str]) -> Output {
    let out = jade(dir, args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    out
}

fn json(path: PathBuf) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn moments(path: PathBuf) -> Vec<f64> {
    json(path)["moments"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap().parse().unwrap())
        .collect()
}

#[test]
fn corpus_moments_are_normalized() {
    let dir = TempDir::new().unwrap();
    ok(dir.path(), &["moments", "--corpus", "bimodal-poly", "--order", "20"]);
    let m = moments(dir.path().join("moments.json"));
    assert_eq!(m.len(), 21);
    assert_eq!(m[0], 1.0);
    assert!(m.iter().all(|v| v.abs() <= 1.0));
}

#[test]
fn pauli_z_moments_alternate() {
    let dir = TempDir::new().unwrap();
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let matrix = serde_json::json!({
        "dim": 2,
        "matrix": [[1.0, 0.0], [0.0, 0.0], [0.0, 0.0], [-1.0, 0.0]],
        "state": [[s, 0.0], [s, 0.0]],
    });
    let path = dir.path().join("z.json");
    std::fs::write(&path, matrix.to_string()).unwrap();
    ok(dir.path(), &["moments", "--matrix", path.to_str().unwrap(), "--order", "6"]);
    let m = moments(dir.path().join("moments.json"));
    for (n, v) in m.iter().enumerate() {
        let expected = if n % 2 == 0 { 1.0 } else { 0.0 };
        assert!((v - expected).abs() < 1e-15, "mu_{n} = {v}");
    }
}

#[test]
fn estimate_reproduces_the_arcsine_law() {
    let dir = TempDir::new().unwrap();
    let central = |k: u64| -> String {
        // (2k choose k) / 4^k, written exactly
        let mut r = 1.0f64;
        for j in 1..=k {
            r *= (k + j) as f64 / (4.0 * j as f64);
        }
        format!("{r:.17e}")
    };
    let values: Vec<String> = (0..=12).map(|n| if n % 2 == 1 { "0".into() } else { central(n / 2) }).collect();
    let file = serde_json::json!({"domain": [-1.0, 1.0], "moments": values});
    let path = dir.path().join("arcsine.json");
    std::fs::write(&path, file.to_string()).unwrap();
    ok(dir.path(), &["estimate", path.to_str().unwrap()]);
    let (x, f) = read_density_csv(&dir.path().join("density.csv")).unwrap();
    assert_eq!(x.len(), 2001);
    for (x, f) in x.iter().zip(&f) {
        let exact = 1.0 / (PI * (1.0 - x * x).sqrt());
        assert!((f - exact).abs() <= 1e-12 * exact, "x={x}");
    }
}

#[test]
fn moments_then_estimate_round_trip() {
    let dir = TempDir::new().unwrap();
    ok(dir.path(), &["moments", "--corpus", "sigmoid", "--order", "30"]);
    let file = dir.path().join("moments.json");
    let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    ok(dir.path(), &["estimate", file.to_str().unwrap(), "--output", a.to_str().unwrap()]);
    // the moment file is the only input, so a second pass is identical
    ok(dir.path(), &["estimate", file.to_str().unwrap(), "--output", b.to_str().unwrap()]);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let (_, f) = read_density_csv(&a).unwrap();
    // f sqrt(1 - x^2) is not smooth at the ends, so convergence is algebraic
    assert!((f[1000] - 0.5).abs() < 1e-3, "sigmoid at 0: {}", f[1000]);
}

#[test]
fn requesting_too_many_moments_fails() {
    let dir = TempDir::new().unwrap();
    ok(dir.path(), &["moments", "--corpus", "sigmoid", "--order", "10"]);
    let file = dir.path().join("moments.json");
    let out = jade(dir.path(), &["estimate", file.to_str().unwrap(), "--order", "25"]);
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("25") && err.contains("10"), "{err}");
}

#[test]
fn clipping_gives_a_nonnegative_normalized_density() {
    let dir = TempDir::new().unwrap();
    ok(dir.path(), &["moments", "--corpus", "asym-uniform", "--order", "30"]);
    let file = dir.path().join("moments.json");
    let out = ok(dir.path(), &["estimate", file.to_str().unwrap(), "--clip"]);
    let (_, f) = read_density_csv(&dir.path().join("density.csv")).unwrap();
    assert!(f.iter().all(|v| *v >= 0.0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("mass 1.000000000000"));
}

#[test]
fn runs_are_byte_identical() {
    let a = TempDir::new().unwrap();
    let b = TempDir::new().unwrap();
    for dir in [&a, &b] {
        ok(dir.path(), &["compare", "--reference", "multimodal-gauss", "--methods", "jade:20,gram-charlier:6,kde:2000"]);
    }
    for name in ["report.json", "comparison.csv"] {
        assert_eq!(
            std::fs::read(a.path().join(name)).unwrap(),
            std::fs::read(b.path().join(name)).unwrap(),
            "{name}"
        );
    }
}

#[test]
fn density_tables_round_trip_doubles() {
    let dir = TempDir::new().unwrap();
    ok(dir.path(), &["corpus", "sigmoid"]);
    ok(dir.path(), &["--format", "json", "corpus", "sigmoid"]);
    assert_eq!(json(dir.path().join("sigmoid.params.json"))["id"], "sigmoid");
    let (x, f) = read_density_csv(&dir.path().join("sigmoid.csv")).unwrap();
    let table = json(dir.path().join("sigmoid.json"));
    let column = |name: &str| -> Vec<f64> {
        table[name].as_array().unwrap().iter().map(|v| v.as_f64().unwrap()).collect()
    };
    assert_eq!(column("x"), x);
    assert_eq!(column("density"), f);
    for (x, f) in x.iter().zip(&f) {
        assert!((f - 1.0 / (1.0 + (-5.0 * x).exp())).abs() < 1e-15);
    }
}

#[test]
fn warnings_reach_stderr_and_the_output() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("binary.json");
    std::fs::write(&path, r#"{"domain": [-1, 1], "moments": [1, 0, 0.3333333333333333]}"#).unwrap();
    let out = ok(dir.path(), &["estimate", path.to_str().unwrap()]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning:"));
    let csv = std::fs::read_to_string(dir.path().join("density.csv")).unwrap();
    assert!(csv.starts_with("# warning:"));

    ok(dir.path(), &["--format", "json", "estimate", path.to_str().unwrap()]);
    let j = json(dir.path().join("density.json"));
    assert!(!j["warnings"].as_array().unwrap().is_empty());
}

#[test]
fn compare_writes_report_and_long_table() {
    let dir = TempDir::new().unwrap();
    ok(dir.path(), &["compare", "--reference", "bimodal-poly", "--methods", "jade:20,gram-charlier:10"]);
    let report = json(dir.path().join("report.json"));
    let methods = report["methods"].as_array().unwrap();
    assert_eq!(methods.len(), 2);
    let l2 = |i: usize| methods[i]["metrics"]["l2"].as_f64().unwrap();
    assert!(l2(0) < l2(1));
    let csv = std::fs::read_to_string(dir.path().join("comparison.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("x,method,value"));
    let labels: std::collections::BTreeSet<&str> = lines.map(|l| l.split(',').nth(1).unwrap()).collect();
    assert_eq!(labels.len(), 3);
    assert!(labels.contains("reference"));
}

#[test]
fn spectrum_writes_each_order() {
    let dir = TempDir::new().unwrap();
    let out = ok(dir.path(), &["spectrum", "--random", "16", "--orders", "10,40"]);
    for name in ["exact.csv", "jade-10.csv", "jade-40.csv", "spectrum.json"] {
        assert!(dir.path().join(name).exists(), "{name}");
    }
    let report = json(dir.path().join("spectrum.json"));
    assert_eq!(report["dimension"], 16);
    assert_eq!(report["convergence"].as_array().unwrap().len(), 2);
    assert!(String::from_utf8_lossy(&out.stdout).contains("dimension 16"));
}

#[test]
fn corpus_records_parameters() {
    let dir = TempDir::new().unwrap();
    ok(dir.path(), &["--seed", "7", "corpus", "multimodal-gauss", "--modes", "5"]);
    let p = json(dir.path().join("multimodal-gauss.params.json"));
    assert_eq!(p["seed"], 7);
    assert_eq!(p["modes"], 5);
    let (x, f) = read_density_csv(&dir.path().join("multimodal-gauss.csv")).unwrap();
    assert_eq!(x.len(), 2001);
    assert!(f.iter().all(|v| *v >= 0.0));
}

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn ddk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ddk"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn workdir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ddk-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn p(dir: &Path, file: &str) -> String {
    dir.join(file).display().to_string()
}

#[test]
fn simulate_select_and_fpca_pipeline() {
    let dir = workdir("pipeline");
    let data = p(&dir, "data.csv");
    let out = ddk(&[
        "simulate", "--model", "kl", "--n", "40", "--grid", "400", "--seed", "7", "--out", &data,
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = std::fs::read_to_string(&data).unwrap();
    assert!(text.starts_with("t,curve_1,"));
    assert_eq!(text.lines().count(), 401);

    let knots = p(&dir, "knots.txt");
    let trace = p(&dir, "trace.csv");
    let out = ddk(&[
        "select-knots",
        "--input",
        &data,
        "--theta",
        "0.05",
        "--criterion",
        "relative",
        "--split",
        "0.6",
        "--seed",
        "42",
        "--max-knots",
        "30",
        "--out",
        &knots,
        "--trace",
        &trace,
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let k: Vec<f64> = std::fs::read_to_string(&knots)
        .unwrap()
        .lines()
        .map(|l| l.parse().unwrap())
        .collect();
    assert!(k.len() >= 4 && k.windows(2).all(|w| w[0] < w[1]));
    let trace = std::fs::read_to_string(&trace).unwrap();
    let mut lines = trace.lines();
    assert_eq!(lines.next(), Some("iter,knot,train_amse,valid_amse"));
    assert_eq!(lines.count(), k.len() + 1);

    let eigen = p(&dir, "eigen.csv");
    let out = ddk(&[
        "fpca",
        "--input",
        &data,
        "--basis",
        "splinet",
        "--knots",
        &knots,
        "--degree",
        "3",
        "--components",
        "4",
        "--out",
        &eigen,
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = std::fs::read_to_string(&eigen).unwrap();
    let first: Vec<&str> = text.lines().next().unwrap().split(',').collect();
    assert_eq!(first[0], "eigenvalue");
    let lambdas: Vec<f64> = first[1..].iter().map(|v| v.parse().unwrap()).collect();
    assert_eq!(lambdas.len(), 4);
    assert!(lambdas.windows(2).all(|w| w[0] >= w[1]));
    assert_eq!(text.lines().count(), 401);
}

#[test]
fn every_generator_writes_a_dataset() {
    let dir = workdir("generators");
    for model in ["kl", "bridge", "vehicle", "slepian", "random-functional"] {
        let out_file = p(&dir, &format!("{model}.csv"));
        let out = ddk(&[
            "simulate", "--model", model, "--n", "2", "--grid", "1500", "--seed", "1", "--out",
            &out_file,
        ]);
        assert!(
            out.status.success(),
            "{model}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        let text = std::fs::read_to_string(&out_file).unwrap();
        assert_eq!(text.lines().next(), Some("t,curve_1,curve_2"), "{model}");
    }
}

#[test]
fn simulate_reads_model_json() {
    let dir = workdir("json");
    let cfg = p(&dir, "bridge.json");
    std::fs::write(&cfg, r#"{"filter":{"name":"exponential","scale":0.05}}"#).unwrap();
    let out = ddk(&[
        "simulate", "--model", "bridge", "--config", &cfg, "--n", "2", "--grid", "100",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    std::fs::write(&cfg, r#"{"filter":{"name":"triangle"}}"#).unwrap();
    let out = ddk(&[
        "simulate", "--model", "bridge", "--config", &cfg, "--n", "2", "--grid", "100",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn basis_export_has_requested_resolution() {
    let out = ddk(&[
        "basis",
        "export",
        "--basis",
        "fourier",
        "--size",
        "5",
        "--resolution",
        "11",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("t,f_1,f_2,f_3,f_4,f_5"));
    assert_eq!(text.lines().count(), 12);
}

#[test]
fn bench_runs_and_is_reproducible() {
    let dir = workdir("bench");
    let (a, b) = (p(&dir, "a.csv"), p(&dir, "b.csv"));
    for (file, workers) in [(&a, "1"), (&b, "2")] {
        let out = ddk(&[
            "bench",
            "--experiment",
            "ddk-vs-equispaced",
            "--replicates",
            "3",
            "--grid-size",
            "300",
            "--seed",
            "5",
            "--workers",
            workers,
            "--out",
            file,
        ]);
        assert!(
            out.status.success(),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
    let (ta, tb) = (
        std::fs::read_to_string(&a).unwrap(),
        std::fs::read_to_string(&b).unwrap(),
    );
    // only the echoed output path differs
    let strip = |t: &str| {
        t.lines()
            .filter(|l| !l.starts_with("# config"))
            .collect::<Vec<_>>()
            .join("\n")
    };
    assert_eq!(strip(&ta), strip(&tb));
    assert!(ta.contains("# root_seed=5"));
    assert!(ta.contains("cell,replicate,metric,value"));
}

#[test]
fn bench_dry_run_prints_plan() {
    let out = ddk(&[
        "bench",
        "--experiment",
        "eigen-mse",
        "--sizes",
        "25,50",
        "--dry-run",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("experiment: eigen_mse"));
    assert!(text.contains("[25, 50]"));
}

#[test]
fn exit_codes_separate_config_and_numerical_errors() {
    let dir = workdir("codes");
    let cfg = p(&dir, "bad.json");
    std::fs::write(&cfg, r#"{"experiment":"eigen_mse","mc_replicates":0}"#).unwrap();
    assert_eq!(ddk(&["bench", "--config", &cfg]).status.code(), Some(2));
    assert_eq!(
        ddk(&["bench", "--experiment", "nope"]).status.code(),
        Some(2)
    );
    assert_eq!(ddk(&["bench", "--no-such-flag"]).status.code(), Some(2));
    // a grid too coarse for stable integration is a numerical failure
    assert_eq!(
        ddk(&["simulate", "--model", "vehicle", "--n", "1", "--grid", "50"])
            .status
            .code(),
        Some(3)
    );
}

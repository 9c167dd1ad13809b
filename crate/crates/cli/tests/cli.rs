//! End-to-end checks of the binary: interface contract, determinism, exit
//! codes.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sphmult"))
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("sphmult-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn run_ok(args: &[&str]) -> Output {
    let out = bin().args(args).output().expect("spawn");
    assert!(
        out.status.success(),
        "expected success, got {:?}\nstderr: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

#[test]
fn cos_bound_report_contract() {
    let json_path = tmp("cos.json");
    run_ok(&[
        "cos-bound",
        "--lambda",
        "8,16,32,64,128",
        "--p",
        "1.3333",
        "--trunc",
        "512",
        "--out",
        json_path.to_str().unwrap(),
    ]);
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
    let results = doc["results"].as_array().unwrap();
    assert_eq!(results.len(), 5);
    assert!(doc["fit"]["slope"].is_number());
    let slope = doc["fit"]["slope"].as_f64().unwrap();
    assert!((slope - 0.5).abs() < 0.05, "slope {slope}");
    // rows sorted by parameter
    let params: Vec<f64> = results.iter().map(|r| r["param"].as_f64().unwrap()).collect();
    assert!(params.windows(2).all(|w| w[0] < w[1]));
    // every component carries op + tol
    let comp = &results[0]["components"]["strongBound"];
    assert!(comp["value"].is_number());
    assert_eq!(comp["op"], "bounds.cos_bound");
    // CSV sibling with the documented header
    let csv = std::fs::read_to_string(json_path.with_extension("csv")).unwrap();
    let header = csv.lines().next().unwrap();
    assert_eq!(
        header,
        "param,value,n,p,q,paramValue,innerProductRe,innerProductIm,uNormQ,prefactor,strongBound,weakProxy,truncationDegree,uInfRefinementResidual"
    );
    assert_eq!(csv.lines().count(), 6);
}

#[test]
fn reruns_are_byte_identical() {
    let path = tmp("det.json");
    let args = [
        "cos-bound",
        "--lambda",
        "8,16,32",
        "--p",
        "1.5",
        "--out",
        path.to_str().unwrap(),
    ];
    run_ok(&args);
    let ja = std::fs::read(&path).unwrap();
    let ca = std::fs::read(path.with_extension("csv")).unwrap();
    run_ok(&args);
    let jb = std::fs::read(&path).unwrap();
    let cb = std::fs::read(path.with_extension("csv")).unwrap();
    assert_eq!(ja, jb, "JSON outputs differ between reruns");
    assert_eq!(ca, cb, "CSV outputs differ between reruns");
}

#[test]
fn invalid_p_is_a_named_validation_error() {
    let out = bin()
        .args([
            "cos-bound",
            "--lambda",
            "8",
            "--p",
            "0.5",
            "--out",
            tmp("bad.json").to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(!out.status.success());
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("p = 0.5"), "stderr: {stderr}");
    // nothing computed, nothing written
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_subcommand_is_a_usage_error() {
    let out = bin().arg("frobnicate").output().unwrap();
    assert!(!out.status.success());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unwritable_path_is_an_io_error() {
    let out = bin()
        .args([
            "gamma",
            "--n",
            "2",
            "--j",
            "1",
            "--out",
            "/nonexistent-dir/r.json",
        ])
        .output()
        .unwrap();
    assert!(!out.status.success());
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("writing"), "stderr: {stderr}");
}

#[test]
fn gamma_and_fk_smoke() {
    let out_path = tmp("gamma.json");
    run_ok(&[
        "gamma",
        "--n",
        "2,4",
        "--j",
        "1,2,64",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    for r in doc["results"].as_array().unwrap() {
        assert_eq!(r["tolerancesMet"], true);
    }

    let out_path = tmp("fk.json");
    run_ok(&["fk", "--k", "1,3", "--out", out_path.to_str().unwrap()]);
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    let row = &doc["results"][0];
    let total = row["components"]["l1Total"]["value"].as_f64().unwrap();
    assert!((total - 0.6266570687).abs() < 1e-6);
}

#[test]
fn sweep_slope_gate_drives_exit_code() {
    // omega-norm scaling is exactly linear; expecting slope 1 passes
    run_ok(&[
        "sweep",
        "--target",
        "omega",
        "--lambda",
        "8,16,32",
        "--expect-slope",
        "1.0",
        "--slope-tol",
        "0.1",
        "--out",
        tmp("sweep_ok.json").to_str().unwrap(),
    ]);
    // expecting slope 3 fails the gate: exit code 1, report still written
    let path = tmp("sweep_bad.json");
    let out = bin()
        .args([
            "sweep",
            "--target",
            "omega",
            "--lambda",
            "8,16,32",
            "--expect-slope",
            "3.0",
            "--out",
            path.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(path.exists());
}

#[test]
fn config_file_merges_beneath_flags() {
    let cfg = tmp("cfg.txt");
    std::fs::write(&cfg, "lambda=8,16,32\np=1.5\n# comment\n").unwrap();
    let from_cfg = tmp("merge_a.json");
    run_ok(&[
        "cos-bound",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        from_cfg.to_str().unwrap(),
    ]);
    // flag overrides the file
    let overridden = tmp("merge_b.json");
    run_ok(&[
        "cos-bound",
        "--config",
        cfg.to_str().unwrap(),
        "--p",
        "2.0",
        "--out",
        overridden.to_str().unwrap(),
    ]);
    let a: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&from_cfg).unwrap()).unwrap();
    let b: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&overridden).unwrap()).unwrap();
    assert_eq!(a["results"][0]["components"]["p"]["value"].as_f64(), Some(1.5));
    assert_eq!(b["results"][0]["components"]["p"]["value"].as_f64(), Some(2.0));
}

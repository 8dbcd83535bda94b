use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bracket-module")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

#[test]
fn verify_haar_passes() {
    let o = run(&["verify", "--builtin", "haar"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert_eq!(v["result"]["verdict"], "pass");
    assert_eq!(v["provenance"]["n_range"], serde_json::json!([-6, 6]));
    assert!(v["provenance"]["tolerances"]["ortho"].is_number());
}

#[test]
fn shannon_filter_csv_has_the_quarter_band() {
    let o = run(&["filters", "extract", "--builtin", "shannon", "--emit-csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("zeta,h_re,h_im,h_abs,g0_re"));
    let mut inner = 0;
    for line in lines {
        let cols: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
        let (z, h) = (cols[0], cols[1]);
        if z.abs() < 0.25 - 2.0 / 1024.0 {
            assert!((h - 2f64.sqrt()).abs() < 1e-8, "{line}");
            inner += 1;
        }
    }
    assert!(inner > 400);
}

#[test]
fn quincunx_has_two_cosets() {
    let o = run(&["lattice", "cosets", "--matrix", "[[1,1],[1,-1]]"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["result"]["cosets"].as_array().unwrap().len(), 2);
    assert_eq!(v["result"]["index"], 2);
}

#[test]
fn validation_errors_exit_with_two() {
    assert_eq!(run(&["lattice", "cosets", "--matrix", "[[1,0],[0,1]]"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--builtin", "morlet"]).status.code(), Some(2));
    assert_eq!(run(&["norms", "--grid-m", "100"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["cascade", "--builtin", "shannon"]).status.code(), Some(2));
}

#[test]
fn numeric_failures_exit_with_three() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("box.json");
    let doc = serde_json::json!({
        "kind": "analytic", "domain": "time", "dim": 1,
        "pieces": [{"map": [1.0], "offset": [0.0], "lo": [0.0], "hi": [1.0],
                    "poly": {"shape": [1], "coef": [[1.0, 0.0]]}}]
    });
    std::fs::write(&f, doc.to_string()).unwrap();
    let path = f.to_str().unwrap();
    let o = run(&["bracket", "--f", path, "--route", "fourier"]);
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stderr));
    let o = run(&["bracket", "--f", path]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(json(&o)["result"]["taps"]["taps"].as_array().unwrap().len(), 1);
}

#[test]
fn runs_are_byte_identical() {
    let a = run(&["norms", "--random", "3", "--seed", "5", "--levels", "-1:1"]);
    let b = run(&["norms", "--random", "3", "--seed", "5", "--levels", "-1:1"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["norms", "--random", "3", "--seed", "6", "--levels", "-1:1"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn thread_cap_is_honoured_and_checked() {
    let single = Command::new(env!("CARGO_BIN_EXE_bracket-module"))
        .args(["norms", "--random", "2", "--levels", "0:1"])
        .env("BRACKET_MODULE_THREADS", "1")
        .output()
        .unwrap();
    let many = Command::new(env!("CARGO_BIN_EXE_bracket-module"))
        .args(["norms", "--random", "2", "--levels", "0:1"])
        .env("BRACKET_MODULE_THREADS", "4")
        .output()
        .unwrap();
    assert_eq!(single.status.code(), Some(0));
    assert_eq!(single.stdout, many.stdout);
    let bad = Command::new(env!("CARGO_BIN_EXE_bracket-module"))
        .args(["lattice", "info", "--matrix", "[[2]]"])
        .env("BRACKET_MODULE_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn artifacts_land_in_the_output_directory() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = run(&["cascade", "--builtin", "db4", "--iters", "6", "--emit-csv", "--binary", "--out", out]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    for f in ["cascade.json", "cascade.csv", "cascade_phi.bin"] {
        assert!(Path::new(out).join(f).exists(), "{f}");
    }
    let csv = std::fs::read_to_string(dir.path().join("cascade.csv")).unwrap();
    assert_eq!(csv.lines().count(), 7);

    let bin = dir.path().join("cascade_phi.bin");
    let o = run(&["bracket", "--f", bin.to_str().unwrap(), "--window", "4"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let taps = json(&o)["result"]["taps"]["taps"].clone();
    let centre = taps.as_array().unwrap().iter().find(|t| t["index"] == serde_json::json!([0])).unwrap();
    assert!((centre["re"].as_f64().unwrap() - 1.0).abs() < 1e-3);
}

#[test]
fn verify_reads_a_wavelet_file() {
    let dir = tempfile::tempdir().unwrap();
    let psi = serde_json::json!({
        "kind": "analytic", "domain": "time", "dim": 1,
        "pieces": [
            {"map": [1.0], "offset": [0.0], "lo": [0.0], "hi": [0.5], "poly": {"shape": [1], "coef": [[1.0, 0.0]]}},
            {"map": [1.0], "offset": [0.0], "lo": [0.5], "hi": [1.0], "poly": {"shape": [1], "coef": [[-1.0, 0.0]]}}
        ]
    });
    let doc = serde_json::json!({"dilation": {"dim": 1, "entries": [[2]]}, "psi": [psi], "n_range": [-2, 2]});
    let f = dir.path().join("haar.json");
    std::fs::write(&f, doc.to_string()).unwrap();
    let o = run(&["verify", "--wavelets", f.to_str().unwrap(), "--emit-csv"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(text.starts_with("i,j,n,m,residual,zeta\n"));
    assert_eq!(text.lines().count(), 1 + 25);
}

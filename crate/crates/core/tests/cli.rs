use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_superstft"))
        .args(args)
        .output()
        .expect("spawn superstft")
}

fn rows(out: &Output) -> Vec<Vec<String>> {
    let mut r = csv::Reader::from_reader(out.stdout.as_slice());
    r.records()
        .map(|rec| rec.unwrap().iter().map(str::to_owned).collect())
        .collect()
}

fn header(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .next()
        .unwrap_or("")
        .to_owned()
}

fn col(row: &[String], i: usize) -> f64 {
    row[i].parse().unwrap()
}

#[test]
fn spectrogram_default_grid() {
    let out = run(&["spectrogram"]);
    assert!(out.status.success());
    assert_eq!(header(&out), "u,eta,re,im,abs");
    let rows = rows(&out);
    assert_eq!(rows.len(), 61 * 61);
    assert_eq!(col(&rows[0], 0), -3.0);
    for r in &rows {
        let (re, im, abs) = (col(r, 2), col(r, 3), col(r, 4));
        assert!((re.hypot(im) - abs).abs() <= 1e-15 * abs.max(1.0));
    }
}

#[test]
fn spectrogram_closed_matches_numeric() {
    let out = run(&["spectrogram", "--mode", "both"]);
    assert!(out.status.success());
    assert_eq!(header(&out), "u,eta,re,im,abs,abs_err");
    let worst = rows(&out).iter().map(|r| col(r, 5)).fold(0.0, f64::max);
    assert!(worst <= 1e-7, "{worst}");
}

#[test]
fn spectrogram_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.csv");
    let p = path.to_str().unwrap();
    let out = run(&[
        "spectrogram",
        "--window",
        "hermite",
        "--order",
        "2",
        "--signal",
        "limit",
        "--u",
        "0:1:3",
        "--eta",
        "0.5",
        "--out",
        p,
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(Path::new(p)).unwrap();
    assert_eq!(text.lines().count(), 4);
    assert!(!text.contains('\r'));
}

#[test]
fn spectrogram_rejects_bad_input() {
    assert_eq!(run(&["spectrogram", "--order", "-1"]).status.code(), Some(2));
    assert_eq!(run(&["spectrogram", "--n", "0"]).status.code(), Some(2));
    assert_eq!(run(&["spectrogram", "--u", "1:0:3"]).status.code(), Some(2));
}

#[test]
fn verify_single_suite() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run(&["verify", "--suite", "hermite", "--json", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["seed"], 42);
    let ids: Vec<&str> = report["suites"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["id"].as_str().unwrap())
        .collect();
    assert!(ids.contains(&"i_km_compact"));
    assert!(ids.contains(&"quadrature_stability"));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.lines().all(|l| l.starts_with("PASS")), "{stderr}");
}

#[test]
fn verify_reports_failures_with_exit_code() {
    let out = run(&["verify", "--suite", "zak"]);
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let failed: Vec<&str> = report["suites"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["pass"] == false)
        .map(|r| r["id"].as_str().unwrap())
        .collect();
    assert_eq!(failed, ["frame_verdict_superosc"]);
}

#[test]
fn verify_unknown_suite() {
    assert_eq!(run(&["verify", "--suite", "nope"]).status.code(), Some(2));
}

#[test]
fn evolve_initial_datum() {
    let (x0, k0) = (0.5, 1.0);
    let out = run(&[
        "evolve",
        "--t",
        "0",
        "--x",
        "-2:2:9",
        "--x0",
        "0.5",
        "--k0",
        "1",
        "--normalized",
    ]);
    assert!(out.status.success());
    assert_eq!(header(&out), "x,t,re,im,abs,accuracy_flag");
    let rows = rows(&out);
    assert_eq!(rows.len(), 9);
    for r in &rows {
        let x = col(r, 0);
        let amp = (-(x - x0) * (x - x0) / 2.0).exp();
        let (re, im) = (amp * (k0 * x).cos(), amp * (k0 * x).sin());
        assert!((col(r, 2) - re).abs() < 1e-9 && (col(r, 3) - im).abs() < 1e-9, "{r:?}");
        assert_eq!(r[5], "0");
    }
}

#[test]
fn evolve_flags_long_times() {
    let out = run(&[
        "evolve", "--window", "hermite", "--order", "1", "--t", "2000", "--x", "0",
    ]);
    assert!(out.status.success());
    let rows = rows(&out);
    assert_eq!(rows[0][5], "1");
}

#[test]
fn evolve_superosc_modes() {
    let out = run(&["evolve", "--superosc", "--a", "2", "--n", "4", "--t", "0", "--x", "0"]);
    assert!(out.status.success());
    let rows = rows(&out);
    assert!((col(&rows[0], 2) - 1.0).abs() < 1e-12 && col(&rows[0], 3).abs() < 1e-12);
}

#[test]
fn zak_frame_json() {
    let out = run(&["zak-frame", "--resolution", "32"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["gridResolution"], 32);
    assert_eq!(v["verdict"], "NotFrame");
    assert!(v["refinedMinimum"]["value"].as_f64().unwrap() < 1e-8);
    assert!(v["upperBound"].as_f64().unwrap() > 2.5);
}

#[test]
fn zak_frame_rejects_zero_resolution() {
    assert_eq!(run(&["zak-frame", "--resolution", "0"]).status.code(), Some(2));
}

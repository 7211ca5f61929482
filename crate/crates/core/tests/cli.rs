use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn dra(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dra"))
        .args(args)
        .env_remove("DRA_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = dra(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json_of(args: &[&str]) -> Value {
    serde_json::from_str(&stdout_of(args)).unwrap()
}

/// Data lines of a CSV with its `#` metadata line checked and removed.
fn csv_body(text: &str) -> Vec<&str> {
    let mut lines = text.lines();
    let meta = lines.next().unwrap();
    assert!(meta.starts_with("# dra "), "{meta}");
    let json = meta.splitn(4, ' ').nth(3).unwrap();
    serde_json::from_str::<Value>(json).expect("metadata is JSON");
    lines.collect()
}

#[test]
fn curves_schema() {
    let text = stdout_of(&["curves", "--s-min", "0.05", "--s-max", "0.4", "--s-steps", "4"]);
    let body = csv_body(&text);
    assert_eq!(body[0], "s,ell,phi");
    assert_eq!(body.len(), 1 + 4 * 4);
    let ells: Vec<&str> = body[1..].iter().map(|l| l.split(',').nth(1).unwrap()).collect();
    assert_eq!(&ells[..4], ["0"; 4]);
    assert_eq!(&ells[12..], ["inf"; 4]);
    for line in &body[1..] {
        let f: Vec<&str> = line.split(',').collect();
        assert_eq!(f.len(), 3);
        // 17 significant digits
        assert_eq!(f[0].split('e').next().unwrap().len(), 18, "{line}");
        f[2].parse::<f64>().unwrap();
    }
    let single = stdout_of(&["curves", "--s-min", "0.1", "--s-max", "0.1", "--s-steps", "1", "--ells", "inf,0"]);
    let body = csv_body(&single);
    assert_eq!(body.len(), 3);
    assert!(body[1].contains(",0,") && body[2].contains(",inf,"));
}

#[test]
fn classify_examples() {
    let empty = json_of(&["classify", "--s", "0.05", "--k", "0.5"]);
    assert_eq!(empty["label"], "empty");
    assert!(empty.get("ell").is_none() && empty.get("P").is_none());

    let curves = stdout_of(&["curves", "--s-min", "0.3", "--s-max", "0.3", "--s-steps", "1", "--ells", "1,2"]);
    let phis: Vec<f64> = csv_body(&curves)[1..]
        .iter()
        .map(|l| l.split(',').nth(2).unwrap().parse().unwrap())
        .collect();
    let mid = format!("{}", 0.5 * (phis[0] + phis[1]));
    let sphere = json_of(&["classify", "--s", "0.3", "--k", &mid]);
    assert_eq!(sphere["label"], "sphere");
    assert_eq!(sphere["ell"], 1);
    assert_eq!(sphere["radius_path"]["label"], "sphere");
    assert_eq!(sphere["phi_bracket"]["upper"]["ell"], 1);
    assert_eq!(sphere["phi_bracket"]["lower"]["ell"], 2);
    assert!(sphere["P"].as_f64().unwrap() > 0.0);

    let on_curve = format!("{}", phis[0] + 1e-11);
    let boundary = json_of(&["classify", "--s", "0.3", "--k", &on_curve]);
    assert_eq!(boundary["label"], "boundary");
}

#[test]
fn nu_and_omega() {
    let v = json_of(&["nu", "--s", "1.0", "--c", "0.2"]);
    assert!((v["nu"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    let o = json_of(&["omega", "--s", "0.02"]);
    assert_eq!(o["regime"], "small_s");
    assert_eq!(o["omega"].as_f64().unwrap(), 0.4 + 0.02);
    let punctured = dra(&["nu", "--w", "0", "--s", "0.1", "--c", "0.1"]);
    assert_eq!(punctured.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&punctured.stderr).contains("--c"));
}

#[test]
fn square_hilbert_through_points_file() {
    let dir = tempfile::tempdir().unwrap();
    let pts = dir.path().join("square.csv");
    fs::write(&pts, "x,y\n0,0\n1,0\n1,1\n0,1\n").unwrap();
    let p = pts.to_str().unwrap();
    let text = stdout_of(&[
        "hilbert", "--points", p, "--s-min", "1.1", "--s-max", "1.5", "--s-steps", "2", "--k-min", "0", "--k-max", "0",
        "--k-steps", "1",
    ]);
    let body = csv_body(&text);
    assert_eq!(body[0], "s,k,h0,h1");
    let ranks: Vec<(&str, &str)> = body[1..]
        .iter()
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[2], f[3])
        })
        .collect();
    assert_eq!(ranks, [("1", "1"), ("1", "0")]);
}

#[test]
fn hilbert_rows_are_s_major() {
    let text = stdout_of(&["hilbert", "--n", "60", "--s-steps", "3", "--k-steps", "2"]);
    let body = csv_body(&text);
    let s: Vec<&str> = body[1..].iter().map(|l| l.split(',').next().unwrap()).collect();
    assert_eq!(s[0], s[1]);
    assert_ne!(s[1], s[2]);
    assert_eq!(body.len(), 1 + 6);
}

#[test]
fn malformed_points_name_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let pts = dir.path().join("bad.csv");
    fs::write(&pts, "# comment\nx,y\n0.1,0.2\n0.3,oops\n").unwrap();
    let out = dra(&["hilbert", "--points", pts.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 4"));
    let missing = dra(&["hilbert", "--points", dir.path().join("none.csv").to_str().unwrap()]);
    assert_eq!(missing.status.code(), Some(1));
}

#[test]
fn vacuous_compare() {
    let r = json_of(&["compare", "--n", "50", "--s-min", "0.01", "--s-max", "0.02", "--s-steps", "3", "--k-min", "0.9", "--k-max", "1", "--k-steps", "3"]);
    assert_eq!(r["n_checked"], 0);
    assert_eq!(r["vacuous"], true);
    assert_eq!(r["fraction"], 1.0);
    for key in ["n_agree", "margin", "grid_spec", "trivial", "meta"] {
        assert!(r.get(key).is_some(), "{key}");
    }
}

#[test]
fn validation_names_the_field() {
    for (args, field) in [
        (vec!["omega", "--s", "0.1", "--Q", "0.3"], "--Q"),
        (vec!["omega", "--s", "-1"], "--s"),
        (vec!["classify", "--s", "0.1", "--k", "2"], "--k"),
        (vec!["sample", "--n", "0"], "--n"),
        (vec!["compare", "--margin=-0.5"], "--margin"),
        (vec!["hilbert", "--k-max", "1.5"], "--k-max"),
        (vec!["curves", "--ells", "0,x"], "--ells"),
        (vec!["omega", "--s", "0.1", "--w", "0.9"], "--w"),
    ] {
        let out = dra(&args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        let err = String::from_utf8_lossy(&out.stderr);
        assert!(err.contains(field), "{args:?}: {err}");
    }
    let out = Command::new(env!("CARGO_BIN_EXE_dra"))
        .args(["omega", "--s", "0.1"])
        .env("DRA_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("DRA_THREADS"));
}

fn read(p: &Path) -> Vec<u8> {
    fs::read(p).unwrap()
}

#[test]
fn sample_writes_points_and_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("pts.csv");
    let o = out.to_str().unwrap();
    stdout_of(&["sample", "--n", "25", "--seed", "4", "--out", o]);
    let text = String::from_utf8(read(&out)).unwrap();
    let body = csv_body(&text);
    assert_eq!(body[0], "x,y");
    assert_eq!(body.len(), 26);
    let sidecar: Value = serde_json::from_slice(&read(&dir.path().join("pts.csv.json"))).unwrap();
    assert_eq!(sidecar["n"], 25);
    assert_eq!(sidecar["seed"], 4);
    assert!(sidecar["prng"].as_str().unwrap().contains("chacha"));
    assert_eq!(sidecar["model"]["R"], 0.4);
}

#[test]
fn outputs_are_deterministic() {
    let runs: [&[&str]; 7] = [
        &["curves", "--s-steps", "50"],
        &["classify", "--s", "0.07", "--k", "0.02"],
        &["nu", "--s", "0.07", "--c", "0.45"],
        &["omega", "--s", "0.07"],
        &["sample", "--n", "200", "--seed", "3"],
        &["hilbert", "--n", "200", "--seed", "3", "--s-steps", "10", "--k-steps", "10"],
        &["compare", "--n", "200", "--seed", "3", "--s-steps", "10", "--k-steps", "10"],
    ];
    for args in runs {
        assert_eq!(stdout_of(args), stdout_of(args), "{args:?}");
    }
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    stdout_of(&["sample", "--n", "100", "--seed", "8", "--out", a.to_str().unwrap()]);
    stdout_of(&["sample", "--n", "100", "--seed", "8", "--out", b.to_str().unwrap()]);
    assert_eq!(read(&a), read(&b));
    // thread count does not change results
    let one = Command::new(env!("CARGO_BIN_EXE_dra"))
        .args(["hilbert", "--n", "150", "--s-steps", "8", "--k-steps", "8"])
        .env("DRA_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(one.stdout, stdout_of(&["hilbert", "--n", "150", "--s-steps", "8", "--k-steps", "8"]).into_bytes());
}

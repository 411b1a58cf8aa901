use std::process::{Command, Output};

use arccos_bounds::float::diff_tol;
use arccos_bounds::verifier::verify_bounds;
use arccos_bounds::{bound_pair, GridSpec};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_arccos-bounds"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

fn csv_rows(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let headers = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r.records().map(|rec| rec.unwrap().iter().map(String::from).collect()).collect();
    (headers, rows)
}

#[test]
fn eval_defaults_to_csv_when_piped() {
    let o = run(&["eval", "--a", "0", "--x", "0.5"]);
    assert_eq!(o.status.code(), Some(0));
    let (h, rows) = csv_rows(&stdout(&o));
    assert_eq!(h, ["a", "x", "f"]);
    let f: f64 = rows[0][2].parse().unwrap();
    assert!((f - 1.813_799).abs() < 1e-6);
    assert_eq!(f, 1.813_799_364_234_217_8);
}

#[test]
fn eval_family_matches_f_a() {
    let o = run(&["eval", "--alpha", "0.5", "--beta", "0.5", "--gamma", "0", "--x", "0.5", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let f = v[0]["f"].as_f64().unwrap();
    let expected = arccos_bounds::f_a(0.0, 0.5).unwrap();
    assert!((f - expected).abs() <= diff_tol(f, expected));
}

#[test]
fn classify_boundary_is_decreasing() {
    let o = run(&["classify", "--a", "2.8284271247461903"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("Decreasing"));
    let o = run(&["classify", "--a", "2.659792366325487"]);
    assert!(stdout(&o).contains("Increasing"));
}

#[test]
fn verify_single_claim_as_json() {
    let o = run(&["verify", "--claims", "thm2-eq5-lower", "--a", "0", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let r = &v[0];
    assert_eq!(r["claim_id"], "thm2-eq5-lower");
    assert_eq!(r["passed"], true);
    assert_eq!(r["samples"], 1_000_000);
    for key in ["worst_margin", "worst_x", "notes"] {
        assert!(r.get(key).is_some(), "{key}");
    }
}

#[test]
fn verify_list_names_every_claim() {
    let o = run(&["verify", "--list"]);
    assert_eq!(o.status.code(), Some(0));
    let (_, rows) = csv_rows(&stdout(&o));
    assert_eq!(rows.len(), arccos_bounds::registry().len());
    assert!(rows.iter().any(|r| r[0] == "rem4-item3"));
}

#[test]
fn failing_verification_exits_one() {
    // Three points cannot witness the interior minimum.
    let o = run(&["verify", "--claims", "thm1-interior-minimum", "--n", "3"]);
    assert_eq!(o.status.code(), Some(1));
    let (_, rows) = csv_rows(&stdout(&o));
    assert_eq!(rows[0][1], "false");
}

#[test]
fn usage_and_domain_errors() {
    for args in [
        &["frobnicate"][..],
        &["eval", "--x", "0.5"],
        &["eval", "--a", "0"],
        &["verify", "--claims", "no-such-claim"],
        &["bounds", "--a", "0"],
        &["bounds", "--a", "0", "--n", "1"],
        &["verify", "--claims", "rem4-item1", "--grid", "bogus"],
        &["eval", "--alpha", "0.5", "--x", "0.5"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        let err = String::from_utf8_lossy(&o.stderr);
        assert!(err.contains("error"), "{args:?}: {err}");
        assert!(o.stdout.is_empty(), "{args:?}");
    }
    for args in [
        &["eval", "--a", "0", "--x", "1.5"][..],
        &["minimize", "--a", "2.5"],
        &["bounds", "--a", "-2", "--x", "0.5"],
        &["eval", "--alpha", "0.5", "--beta", "1", "--gamma", "-1.5", "--x", "0.3"],
        &["verify", "--claims", "thm2-eq5-lower", "--a", "2.7"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(3), "{args:?}");
        let err = String::from_utf8_lossy(&o.stderr);
        assert_eq!(err.lines().count(), 1, "{err}");
    }
    let err = String::from_utf8_lossy(&run(&["eval", "--a", "0", "--x", "1.5"]).stderr).to_string();
    assert!(err.contains("x = 1.5"), "{err}");
}

#[test]
fn minimal_sweep() {
    let o = run(&["bounds", "--a", "0", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let (h, rows) = csv_rows(&stdout(&o));
    assert_eq!(h, ["x", "lower", "arccos", "upper"]);
    assert_eq!(rows.len(), 2);
}

#[test]
fn curve_rows_are_ordered_and_contained() {
    let o = run(&["bounds", "--a", "2.8284271247461903", "--n", "10000", "--curve"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(!text.contains('\r'));
    let (h, rows) = csv_rows(&text);
    assert_eq!(h.len(), 11);
    assert_eq!(rows.len(), 10_000);
    let col = |name: &str| h.iter().position(|c| c == name).unwrap();
    let (ix, il, ia, iu) = (col("x"), col("lower"), col("arccos"), col("upper"));
    let mut prev = 0.0;
    for r in &rows {
        let v: Vec<f64> = r.iter().map(|s| s.parse().unwrap()).collect();
        assert!(v[ix] > prev);
        prev = v[ix];
        assert!(v[il] - v[ia] <= diff_tol(v[il], v[ia]));
        assert!(v[ia] - v[iu] <= diff_tol(v[ia], v[iu]));
        for name in ["best_lower", "lower_a_star", "lower_two_sqrt2", "lower_lambda"] {
            assert!(v[col(name)] - v[ia] <= diff_tol(v[ia], v[col(name)]), "{name} at {}", v[ix]);
        }
        for name in ["upper_a_star", "upper_two_sqrt2", "upper_best"] {
            assert!(v[ia] - v[col(name)] <= diff_tol(v[ia], v[col(name)]), "{name} at {}", v[ix]);
        }
    }
}

#[test]
fn bounds_csv_round_trips_through_the_verifier() {
    for a in ["0", "2.7", "2.8284271247461903", "5"] {
        let o = run(&["bounds", "--a", a, "--n", "5000"]);
        let (_, rows) = csv_rows(&stdout(&o));
        let a: f64 = a.parse().unwrap();
        let mut contained = true;
        for r in &rows {
            let v: Vec<f64> = r.iter().map(|s| s.parse().unwrap()).collect();
            let b = bound_pair(a, v[0]).unwrap();
            assert_eq!((b.lower, b.upper), (v[1], v[3]));
            contained &= v[2] - v[1] > -diff_tol(v[1], v[2]) && v[3] - v[2] > -diff_tol(v[2], v[3]);
        }
        let report = verify_bounds(a, &GridSpec::refined(5000)).unwrap();
        assert_eq!(contained, report.passed);
        assert_eq!(o.status.code(), Some(if report.passed { 0 } else { 1 }));
    }
}

#[test]
fn output_is_reproducible_and_written_to_file() {
    let dir = std::env::temp_dir().join(format!("arccos-bounds-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("scan.csv");
    let args = ["scan", "--alpha", "0.5", "--beta", "0.5", "--gamma", "0:3:4", "--n", "20000"];
    let first = stdout(&run(&args));
    let second = stdout(&run(&args));
    assert_eq!(first, second);
    let p = path.to_str().unwrap();
    let o = run(&[&args[..], &["--out", p]].concat());
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), first);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn scan_reports_the_slice_and_isolates_singular_triples() {
    let o = run(&[
        "scan", "--alpha", "0.5", "--beta", "0.5", "--gamma", "2.659792366325487", "--n", "100000",
    ]);
    let (_, rows) = csv_rows(&stdout(&o));
    assert_eq!(rows[0][3], "Increasing");

    let o = run(&["scan", "--alpha", "0:1:3", "--beta", "0:1:3", "--gamma", "-1.2:1:3", "--n", "2000"]);
    assert_eq!(o.status.code(), Some(0));
    let (h, rows) = csv_rows(&stdout(&o));
    assert_eq!(&h[..6], ["alpha", "beta", "gamma", "verdict", "evidence_x", "margin"]);
    assert_eq!(rows.len(), 27);
    assert!(rows.iter().any(|r| r[3] == "Error"));
    assert!(rows.iter().any(|r| r[3] != "Error"));
    // Row-major order with gamma varying fastest.
    assert!((rows[1][2].parse::<f64>().unwrap() + 0.1).abs() < 1e-12);
}

#[test]
fn compare_emits_per_point_winners() {
    let o = run(&["compare", "--n", "200", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 200);
    assert_eq!(v["reports"].as_array().unwrap().len(), 3);
    assert!(v["crossover_width"].as_f64().unwrap() <= 1e-10);
}

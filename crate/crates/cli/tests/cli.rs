use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn dlite(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dlite"))
        .args(args)
        .output()
        .expect("run dlite")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn dist_identical_rows_give_zero_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("same.csv");
    std::fs::write(&path, "name,a,b\nA,1,3\nB,2,6\n").unwrap();
    let o = dlite(&[
        "dist",
        "--input",
        path.to_str().unwrap(),
        "--measure",
        "dlite",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), ",A,B\nA,0,0\nB,0,0\n");
}

#[test]
fn dist_point_masses_are_at_distance_one() {
    let o = dlite(&[
        "dist",
        "--input",
        &fixture("disjoint.csv"),
        "--measure",
        "dlite",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), ",Left,Right\nLeft,0,1\nRight,1,0\n");
}

#[test]
fn dist_json_matches_csv() {
    let csv = dlite(&["dist", "--input", &fixture("three.csv")]);
    let json = dlite(&["dist", "--input", &fixture("three.json")]);
    assert_eq!(csv.status.code(), Some(0));
    assert_eq!(stdout(&csv), stdout(&json));
}

#[test]
fn dist_writes_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("m.csv");
    let o = dlite(&[
        "dist",
        "--input",
        &fixture("three.csv"),
        "--output",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).is_empty());
    assert!(std::fs::read_to_string(out)
        .unwrap()
        .starts_with(",P,Q,R\n"));
}

#[test]
fn kl_on_disjoint_supports_exits_3() {
    let o = dlite(&[
        "dist",
        "--input",
        &fixture("disjoint.csv"),
        "--measure",
        "kl",
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("--smooth"));

    let o = dlite(&[
        "dist",
        "--input",
        &fixture("disjoint.csv"),
        "--measure",
        "kl",
        "--smooth",
        "1e-6",
    ]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn parse_errors_exit_2_and_name_row_and_column() {
    let o = dlite(&["dist", "--input", &fixture("bad_cell.csv")]);
    assert_eq!(o.status.code(), Some(2));
    let msg = stderr(&o);
    assert!(msg.contains("row 2") && msg.contains("`b`"), "{msg}");

    let o = dlite(&["dist", "--input", "/nonexistent/file.csv"]);
    assert_eq!(o.status.code(), Some(2));
    let o = dlite(&[
        "dist",
        "--input",
        &fixture("three.csv"),
        "--measure",
        "hellinger",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let o = dlite(&["dist", "--input", &fixture("three.csv"), "--smooth", "0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn pair_reports_every_measure() {
    let o = dlite(&["pair", "--input", &fixture("three.csv"), "P", "Q"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let dl = v["dlite"].as_f64().unwrap();
    let lit = v["lit"].as_f64().unwrap();
    let delta = v["delta_h"].as_f64().unwrap();
    assert!((lit - delta - dl).abs() <= 1e-12);
    assert!((v["dlite_cbrt"].as_f64().unwrap() - dl.cbrt()).abs() <= 1e-15);
    assert!(
        (v["per_outcome"]["a"]["dl"].as_f64().unwrap() - 0.009_475_469_906_675_782).abs() < 1e-15
    );
    for key in ["kl", "jsd", "tv"] {
        assert!(v[key].as_f64().unwrap() > 0.0, "{key}");
    }
}

#[test]
fn pair_self_is_zero_and_kl_may_be_null() {
    let o = dlite(&["pair", "--input", &fixture("three.csv"), "R", "R"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    for key in ["lit", "delta_h", "dlite", "dlite_cbrt", "kl", "jsd", "tv"] {
        assert_eq!(v[key].as_f64(), Some(0.0), "{key}");
    }

    let o = dlite(&["pair", "--input", &fixture("disjoint.csv"), "Left", "Right"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["kl"].is_null());
    assert_eq!(v["dlite"].as_f64(), Some(1.0));
}

#[test]
fn pair_unknown_name_exits_2() {
    let o = dlite(&["pair", "--input", &fixture("three.csv"), "P", "Nope"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("Nope"));
}

#[test]
fn verify_rejects_bad_flags() {
    assert_eq!(dlite(&["verify", "--samples", "0"]).status.code(), Some(2));
    assert_eq!(dlite(&["verify", "--dims", "2,1"]).status.code(), Some(2));
    assert_eq!(
        dlite(&["verify", "--tolerance", "bogus=1"]).status.code(),
        Some(2)
    );
    assert_eq!(dlite(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn verify_is_deterministic_per_seed() {
    let args = ["verify", "--seed", "7", "--samples", "500", "--dims", "2,3"];
    let a = dlite(&args);
    let b = dlite(&args);
    assert_eq!(a.status.code(), Some(0));
    assert!(!a.stdout.is_empty());
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a)
        .lines()
        .all(|l| l.contains("\"seed\":7") || l.contains("\"seed\":0")));
}

#[test]
fn verify_fails_with_impossible_tolerance() {
    let o = dlite(&[
        "verify",
        "--samples",
        "200",
        "--dims",
        "2",
        "--tolerance",
        "derivative=0",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("\"passed\":false"));
}

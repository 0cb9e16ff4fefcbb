//! Acceptance criteria. Runs without the libtest harness so the pass/fail
//! line for each criterion is always printed; exits non-zero if any fails.

use std::panic;
use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use dlite_core::proofcheck::{
    check_kl_contrast, check_metric_axioms, check_oracle_agreement, check_scaling_lemma,
    check_theorem1_derivatives, check_theorem2_concavity, discount_by_quadrature,
    lit_by_quadrature, search_supremum, Grid, PropertyReport, QuadratureConfig, Tolerances,
};
use dlite_core::{delta_h_term, dl_term, dlite, g_term, psi, Distribution64};

const SEED: u64 = 42;
const SAMPLES: usize = 10_000;
const DIMS: [usize; 4] = [2, 3, 4, 8];

fn report_line(n: u32, title: &str, ok: bool, detail: &str) {
    let tag = if ok { "PASS" } else { "FAIL" };
    println!("[{tag}] criterion {n} ({title}): {detail}");
}

fn find<'a>(reports: &'a [PropertyReport], name: &str) -> &'a PropertyReport {
    reports
        .iter()
        .find(|r| r.property_name == name)
        .unwrap_or_else(|| panic!("missing report {name}"))
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn criterion_1_oracle_equivalence() {
    let tol = Tolerances::default();
    assert_eq!((tol.oracle, tol.oracle_boundary), (1e-9, 1e-7));
    let start = Instant::now();
    let reports =
        check_oracle_agreement(2_000, 100, SEED, &QuadratureConfig::default(), &tol).unwrap();
    let elapsed = start.elapsed();

    let mut failures = Vec::new();
    for (name, bound) in [
        ("oracle.lit", 1e-9),
        ("oracle.discount", 1e-9),
        ("oracle.lit.boundary", 1e-7),
        ("oracle.discount.boundary", 1e-7),
    ] {
        let r = find(&reports, name);
        if !(r.worst_violation <= bound && r.passed) {
            failures.push(format!("{name}={:e}", r.worst_violation));
        }
    }
    let total: u64 = ["oracle.lit", "oracle.lit.boundary"]
        .iter()
        .map(|n| find(&reports, n).samples)
        .sum();
    let boundary = find(&reports, "oracle.lit.boundary").samples;
    let ok = failures.is_empty()
        && total == 2_000
        && boundary == 100
        && elapsed < Duration::from_secs(30);
    report_line(
        1,
        "oracle equivalence",
        ok,
        &format!(
            "{total} pairs ({boundary} boundary), worst lit {:e}, worst boundary discount {:e}, {:.1?} {failures:?}",
            find(&reports, "oracle.lit").worst_violation,
            find(&reports, "oracle.discount.boundary").worst_violation,
            elapsed
        ),
    );
    assert!(ok);
}

fn criterion_2_metric_axioms() {
    let tol = Tolerances::default();
    assert_eq!(tol.triangle, 1e-10);
    let start = Instant::now();
    let reports = check_metric_axioms(SAMPLES, &DIMS, SEED, &tol).unwrap();
    let elapsed = start.elapsed();

    let mut failures = Vec::new();
    for d in DIMS {
        let get = |axiom: &str| find(&reports, &format!("metric.{axiom}[d={d}]"));
        let checks = [
            ("nonnegativity", get("nonnegativity").worst_violation >= 0.0),
            ("identity", get("identity").worst_violation > 0.0),
            ("symmetry", get("symmetry").worst_violation == 0.0),
            (
                "triangle_cbrt",
                get("triangle_cbrt").worst_violation >= -1e-10,
            ),
        ];
        for (axiom, holds) in checks {
            let r = get(axiom);
            if !(holds && r.passed && r.samples == SAMPLES as u64) {
                failures.push(format!("{axiom}[d={d}]={:e}", r.worst_violation));
            }
        }
    }
    let ok = failures.is_empty() && elapsed < Duration::from_secs(60);
    report_line(
        2,
        "metric axioms",
        ok,
        &format!(
            "{SAMPLES} triples x dims {DIMS:?}, {:.1?} {failures:?}",
            elapsed
        ),
    );
    assert!(ok);
}

fn criterion_3_scaling_lemma() {
    let r = check_scaling_lemma(SAMPLES, SEED, &Tolerances::default()).unwrap();
    let with_q_greater = r.worst_case_inputs["samples_with_q_greater"]
        .as_u64()
        .unwrap();
    let ok =
        r.passed && r.worst_violation <= 1e-10 && with_q_greater > 0 && r.samples == SAMPLES as u64;
    report_line(
        3,
        "scaling lemma",
        ok,
        &format!(
            "{} samples ({with_q_greater} with q > p), worst relative error {:e}",
            r.samples, r.worst_violation
        ),
    );
    assert!(ok);
}

fn criterion_4_derivative_chain() {
    let check = check_theorem1_derivatives(Grid { n: 100 }, &Tolerances::default());
    let r = &check.reports;
    let first = find(r, "derivative.first_sign");
    let errs = &first.worst_case_inputs["worst_relative_error"];
    let lead = errs["leading-minus"].as_f64().unwrap();
    let none = errs["no-minus"].as_f64().unwrap();
    let exactly_one = (lead <= 1e-5) != (none <= 1e-5);
    let second = find(r, "derivative.second_formula");
    let curvature = find(r, "derivative.second_nonnegative");
    let diagonal = find(r, "derivative.diagonal_zero");
    let ok = exactly_one
        && check.matched_sign.is_some()
        && second.worst_violation <= 1e-5
        && curvature.worst_violation >= -1e-10
        && diagonal.worst_violation <= 1e-7
        && r.iter().all(|x| x.passed);
    report_line(
        4,
        "derivative chain",
        ok,
        &format!(
            "sign {:?} (leading-minus {lead:e}, no-minus {none:e}), dl'' {:e}, min dl'' {:e}, diagonal {:e}",
            check.matched_sign.map(|s| s.name()),
            second.worst_violation,
            curvature.worst_violation,
            diagonal.worst_violation
        ),
    );
    assert!(ok);
}

fn criterion_5_concavity() {
    let r = check_theorem2_concavity(Grid { n: 100 }, &Tolerances::default());
    let max_f2 = -r.worst_violation;
    let ok = r.passed && max_f2 <= 1e-8;
    report_line(
        5,
        "cube-root concavity",
        ok,
        &format!("{} (x, c, m) points, max f'' {max_f2:e}", r.samples),
    );
    assert!(ok);
}

fn criterion_6_boundedness() {
    let r = search_supremum(SAMPLES, &DIMS, SEED, &Tolerances::default()).unwrap();
    let max = r.worst_case_inputs["max"].as_f64().unwrap();
    let disjoint = r.worst_case_inputs["disjoint_supports"].as_bool().unwrap();

    let point = |i: usize| {
        let mut w = [0.0; 2];
        w[i] = 1.0;
        Distribution64::new(["a", "b"], w).unwrap()
    };
    let at_point_masses = dlite(&point(0), &point(1)).unwrap().total;

    let contrast = check_kl_contrast(&[1e-3, 1e-6, 1e-9]);
    let contrast_ok = contrast.passed
        && contrast
            .worst_case_inputs
            .as_array()
            .unwrap()
            .iter()
            .all(|c| c["dlite"].as_f64().unwrap() <= 1.0 && c["kl_undefined"].as_bool().unwrap());

    let ok = r.passed
        && max <= 1.0 + 1e-12
        && (max - 1.0).abs() <= 1e-12
        && disjoint
        && at_point_masses == 1.0
        && contrast_ok;
    report_line(
        6,
        "boundedness",
        ok,
        &format!(
            "max DL {max} over {} searches (disjoint supports: {disjoint}), point masses {at_point_masses}, KL contrast ok: {contrast_ok}",
            r.samples
        ),
    );
    assert!(ok);
}

fn criterion_7_known_values() {
    const DL_HALF_QUARTER: f64 = 0.009_475_469_906_675_782;
    let q = QuadratureConfig::default();

    let by_formula = 0.25 - (psi(0.5).unwrap() - psi(0.25).unwrap()) / 1.5;
    let by_terms = g_term(0.5, 0.25).unwrap() - delta_h_term(0.5, 0.25).unwrap();
    let by_quadrature =
        lit_by_quadrature(0.5, 0.25, &q).unwrap() - discount_by_quadrature(0.5, 0.25, &q).unwrap();
    let dl = dl_term(0.5, 0.25).unwrap();

    let point = |i: usize| {
        let mut w = [0.0; 2];
        w[i] = 1.0;
        Distribution64::new(["a", "b"], w).unwrap()
    };
    let disjoint = dlite(&point(0), &point(1)).unwrap().total;
    let edge = dl_term(1.0, 0.0).unwrap();

    let ok = disjoint == 1.0
        && edge == 0.5
        && (by_formula - by_quadrature).abs() <= 1e-9
        && (dl - by_quadrature).abs() <= 1e-9
        && (dl - by_terms).abs() <= 1e-12
        && (dl - DL_HALF_QUARTER).abs() <= 1e-15;
    report_line(
        7,
        "known values",
        ok,
        &format!(
            "DL(point masses)={disjoint}, dl(1,0)={edge}, dl(0.5,0.25)={dl} (formula {by_formula}, quadrature {by_quadrature})"
        ),
    );
    assert!(ok);
}

fn dlite_bin(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_dlite"))
        .args(args)
        .output()
        .expect("run dlite")
}

fn criterion_8_cli_end_to_end() {
    let verify = dlite_bin(&["verify"]);
    let stdout = String::from_utf8(verify.stdout).unwrap();
    let reports: Vec<serde_json::Value> = stdout
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    let verify_ok = verify.status.code() == Some(0)
        && reports.len() >= 6
        && reports.iter().all(|r| r["passed"] == true);

    let input = fixture("three.csv");
    let input = input.to_str().unwrap();
    let first = dlite_bin(&["dist", "--input", input]);
    let second = dlite_bin(&["dist", "--input", input]);
    let identical = first.stdout == second.stdout;
    let text = String::from_utf8(first.stdout).unwrap();
    let cells: Vec<Vec<&str>> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').skip(1).collect())
        .collect();
    let n = cells.len();
    let square = n == 3 && cells.iter().all(|row| row.len() == n);
    let symmetric = square && (0..n).all(|i| (0..n).all(|j| cells[i][j] == cells[j][i]));
    let zero_diagonal = square && (0..n).all(|i| cells[i][i] == "0");

    let ok = verify_ok
        && first.status.code() == Some(0)
        && second.status.code() == Some(0)
        && identical
        && symmetric
        && zero_diagonal;
    report_line(
        8,
        "CLI end to end",
        ok,
        &format!(
            "verify exit {:?} with {} reports, dist byte-identical {identical}, symmetric {symmetric}, zero diagonal {zero_diagonal}",
            verify.status.code(),
            reports.len()
        ),
    );
    assert!(ok);
}

fn main() -> ExitCode {
    let criteria: [(u32, fn()); 8] = [
        (1, criterion_1_oracle_equivalence),
        (2, criterion_2_metric_axioms),
        (3, criterion_3_scaling_lemma),
        (4, criterion_4_derivative_chain),
        (5, criterion_5_concavity),
        (6, criterion_6_boundedness),
        (7, criterion_7_known_values),
        (8, criterion_8_cli_end_to_end),
    ];
    let mut failed = Vec::new();
    for (n, f) in criteria {
        if panic::catch_unwind(f).is_err() {
            println!("[FAIL] criterion {n}: panicked");
            failed.push(n);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all 8 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        ExitCode::FAILURE
    }
}

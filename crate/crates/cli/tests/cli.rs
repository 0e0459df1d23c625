use std::path::PathBuf;
use std::process::{Command, Output};

use supcenter::report::{Body, EntryBody, Report, Status};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_supcenter"))
}

fn corpus(file: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("corpus")
        .join(file)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_json(args: &[&str]) -> (Output, Report) {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("report.json");
    let mut all: Vec<&str> = args.to_vec();
    let p = out_path.to_str().unwrap();
    all.extend(["--json", p]);
    let out = run(&all);
    let bytes = std::fs::read(&out_path).expect("report written");
    (out, serde_json::from_slice(&bytes).expect("report parses"))
}

#[test]
fn center_of_worked_instance() {
    let path = corpus("worked_instance.json");
    let (out, report) = run_json(&["center", path.to_str().unwrap()]);
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("radius 0.500000000000"), "{stdout}");
    let Body::Center(c) = report.body else {
        panic!("wrong body")
    };
    assert!((c.radius - 0.5).abs() < 1e-9);
    for (a, b) in c.representative.iter().zip([0.5, 0.5, 0.0]) {
        assert!((a - b).abs() < 1e-9);
    }
    assert_eq!(c.vertices.len(), 2);
    assert_eq!(c.constructive.unwrap().subcase, "attained");
}

#[test]
fn modulus_of_worked_instance() {
    let path = corpus("worked_instance.json");
    let (out, report) = run_json(&["p1-modulus", path.to_str().unwrap(), "--eps", "0.1"]);
    assert!(out.status.success());
    let Body::Modulus(m) = report.body else {
        panic!("wrong body")
    };
    assert_eq!(m.entries.len(), 1);
    // the worst near-center sits exactly delta away, so delta* = eps up to
    // the bisection resolution of 1e-4 delta_max
    let d = m.entries[0].delta;
    assert!((0.1 - 1e-4..=0.1 + 1e-12).contains(&d), "{d}");
}

#[test]
fn near_center_reports_the_worst_vertex() {
    let path = corpus("worked_instance.json");
    let (out, report) = run_json(&["near-center", path.to_str().unwrap(), "--delta", "0.1"]);
    assert!(out.status.success());
    let Body::NearCenter(n) = report.body else {
        panic!("wrong body")
    };
    assert_eq!(n.vertices.len(), 4);
    assert!((n.worst_distance - 0.1).abs() < 1e-9);
}

#[test]
fn repair_accepts_a_given_point() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("g.json");
    std::fs::write(
        &inst,
        r#"{
          "schema_version": 1, "name": "given g",
          "family": [[1, 0, 0], [0, 1, 0]],
          "functionals": [{ "support": [0, 1], "weights": [0.5, -0.5] }],
          "options": { "g": [0.6, 0.6, 0.6], "eps": [0.1], "delta": 0.1 }
        }"#,
    )
    .unwrap();
    let (out, report) = run_json(&["repair", inst.to_str().unwrap()]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let Body::Repair(r) = report.body else {
        panic!("wrong body")
    };
    assert_eq!(r.h2, vec![0.5, 0.5, 0.5]);
    assert!(r.displacement <= 0.1 + 1e-9);
}

#[test]
fn repair_rejects_a_far_point() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("g.json");
    std::fs::write(
        &inst,
        r#"{
          "schema_version": 1, "name": "far g",
          "family": [[1, 0, 0], [0, 1, 0]],
          "functionals": [{ "support": [0, 1], "weights": [0.5, -0.5] }],
          "options": { "g": [0, 0, 0], "eps": [0.1], "delta": 0.1 }
        }"#,
    )
    .unwrap();
    let out = run(&["repair", inst.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn scaling_suite_passes() {
    let (out, report) = run_json(&[
        "check-lemmas",
        "--suite",
        "scaling",
        "--trials",
        "100",
        "--seed",
        "7",
    ]);
    assert!(out.status.success());
    let Body::Lemmas(l) = report.body else {
        panic!("wrong body")
    };
    assert_eq!((l.passed, l.trials), (100, 100));
    assert!(String::from_utf8_lossy(&out.stdout).contains("100/100"));
}

#[test]
fn garkavi_from_flags() {
    let (out, report) = run_json(&["garkavi", "--n", "3", "--seed", "1", "--trials", "4"]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    let Body::Garkavi(g) = report.body else {
        panic!("wrong body")
    };
    assert!(g.alpha > 0.75 && g.alpha < 1.0);
    assert!(g.zero_margin_fails);
}

#[test]
fn malformed_files_exit_with_code_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ \"schema_version\": 1, \"name\": ").unwrap();
    let out = run(&["center", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line"));

    std::fs::write(
        &bad,
        r#"{"schema_version": 1, "name": "x", "family": [[1, 2]], "functionals": [{"support": [0, 5], "weights": [0.5, 0.5]}]}"#,
    )
    .unwrap();
    let out = run(&["radius", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("functionals[0].support[1]"));

    let out = run(&["radius", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn garkavi_file_is_refused_by_center_commands() {
    let out = run(&["radius", corpus("garkavi_n3.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reports_round_trip_through_json() {
    let path = corpus("overlap_shared_point.json");
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("r.json");
    let out = run(&[
        "center",
        path.to_str().unwrap(),
        "--json",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let bytes = std::fs::read(&out_path).unwrap();
    let report: Report = serde_json::from_slice(&bytes).unwrap();
    assert_eq!(report.status, Status::Pass);
    assert_eq!(supcenter::report::to_json_bytes(&report), bytes);
}

#[test]
fn corpus_directory_passes() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus");
    let (out, report) = run_json(&["corpus", dir.to_str().unwrap()]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    let Body::Corpus(c) = report.body else {
        panic!("wrong body")
    };
    assert!(c.entries.len() >= 20);
    assert!(c
        .entries
        .iter()
        .all(|e| !matches!(e.body, EntryBody::Error(_))));
}

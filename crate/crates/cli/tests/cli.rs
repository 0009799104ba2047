use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use solvmanifold_cli::record::{read_json, read_verification_csv, EnumerationRecord, Status, VerificationRecord};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_solvmanifold"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn records(out: &Output) -> Vec<VerificationRecord> {
    read_json(out.stdout.as_slice()).unwrap()
}

#[test]
fn a2_all_subsets() {
    let out = run(&["verify", "--series", "A", "--rank", "2"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let recs = records(&out);
    let subsets: Vec<&str> = recs.iter().map(|r| r.subset.as_str()).collect();
    assert_eq!(subsets, ["", "0", "0,1", "1"]);
    assert_eq!(recs.iter().filter(|r| r.status == Status::Skipped).count(), 1);
    for r in recs.iter().filter(|r| r.status != Status::Skipped) {
        assert_eq!(r.status, Status::Passed);
        assert_eq!(r.einstein.as_ref().unwrap().constant, "-1/4");
        assert_eq!(r.minimal, Some(true));
    }
    assert_eq!(recs[1].totally_geodesic, Some(false));
    assert_eq!(json(&out)["schema_version"], 1);
}

#[test]
fn a1_single_record() {
    let out = run(&["verify", "--series", "A", "--rank", "1", "--subset", ""]);
    assert_eq!(out.status.code(), Some(0));
    let recs = records(&out);
    assert_eq!(recs.len(), 1);
    let d = recs[0].dims.unwrap();
    assert_eq!((d.g, d.a, d.n, d.m), (3, 1, 1, 0));
    assert_eq!(recs[0].einstein.as_ref().unwrap().constant, "-1/4");
    assert_eq!(recs[0].trivial_subset, Some(true));
}

#[test]
fn g2_nilpotency() {
    let out = run(&["verify", "--series", "G", "--rank", "2", "--subset", ""]);
    let r = &records(&out)[0];
    let nil = r.nilpotency.unwrap();
    assert_eq!((nil.computed, nil.predicted), (5, 5));
    assert_eq!(r.kind, Some(5));
}

#[test]
fn float_mode_constant() {
    let out = run(&["verify", "--series", "B", "--rank", "2", "--subset", "1", "--scalar", "float"]);
    assert_eq!(out.status.code(), Some(0));
    let r = &records(&out)[0];
    let c: f64 = r.einstein.as_ref().unwrap().constant.parse().unwrap();
    assert!((c + 0.25).abs() < 1e-12);
    assert!(r.checks.iter().all(|c| c.residual <= 1e-9));
}

#[test]
fn direct_sum_and_complexified() {
    let out = run(&["verify", "--series", "A", "--rank", "1", "--series", "A", "--rank", "1", "--subset", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let r = &records(&out)[0];
    assert_eq!(r.trivial_subset, Some(true));
    assert_eq!(r.totally_geodesic, Some(true));

    let out = run(&["verify", "--series", "A", "--rank", "2", "--form", "complexified", "--subset", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(records(&out)[0].form, "complexified");
}

#[test]
fn enumerate_counts() {
    let out = run(&["enumerate", "--series", "A", "--rank", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let recs: Vec<EnumerationRecord> = read_json(out.stdout.as_slice()).unwrap();
    assert_eq!(recs.iter().filter(|r| r.status != Status::Skipped).count(), 7);

    let out = run(&["enumerate", "--series", "A", "--rank", "2", "--subset", "0"]);
    let recs: Vec<EnumerationRecord> = read_json(out.stdout.as_slice()).unwrap();
    assert_eq!(recs[0].dim_n, Some(2));
    assert_eq!(recs[0].nilpotency_computed, Some(1));

    let out = run(&["enumerate", "--series", "F", "--rank", "4", "--subset", ""]);
    let recs: Vec<EnumerationRecord> = read_json(out.stdout.as_slice()).unwrap();
    assert_eq!(recs[0].dim_n, Some(24));
    assert_eq!(recs[0].nilpotency_predicted, Some(11));
}

#[test]
fn export_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let json_path = dir.path().join("b2.json");
    let csv_path = dir.path().join("b2.csv");
    let back_path = dir.path().join("back.json");
    let j = json_path.to_str().unwrap();
    let out = run(&["verify", "--series", "B", "--rank", "2", "--out", j]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let original: Vec<VerificationRecord> = read_json(std::fs::File::open(&json_path).unwrap()).unwrap();

    let out = run(&["export", "--input", j, "--format", "csv", "--out", csv_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let from_csv = read_verification_csv(std::fs::File::open(&csv_path).unwrap()).unwrap();
    assert_eq!(from_csv, original);

    let out = run(&["export", "--input", csv_path.to_str().unwrap(), "--out", back_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let back: Vec<VerificationRecord> = read_json(std::fs::File::open(&back_path).unwrap()).unwrap();
    assert_eq!(back, original);
}

fn without_times(mut recs: Vec<VerificationRecord>) -> Vec<VerificationRecord> {
    for r in &mut recs {
        r.wall_time_ms = 0.0;
    }
    recs
}

fn strip_times(out: &Output) -> String {
    String::from_utf8(out.stdout.clone())
        .unwrap()
        .lines()
        .filter(|l| !l.contains("wall_time_ms"))
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn output_is_independent_of_thread_count() {
    for scalar in ["exact", "float"] {
        let args = ["verify", "--series", "B", "--rank", "3", "--scalar", scalar, "--threads"];
        let one = run(&[&args[..], &["1"]].concat());
        let four = run(&[&args[..], &["4"]].concat());
        assert_eq!(strip_times(&one), strip_times(&four));
        assert_eq!(without_times(records(&one)), without_times(records(&four)));
    }
}

#[test]
fn failed_checks_exit_one() {
    let out = run(&["verify", "--series", "B", "--rank", "2", "--scalar", "float", "--tol", "1e-300"]);
    assert_eq!(out.status.code(), Some(1));
    let recs = records(&out);
    assert!(recs.iter().any(|r| r.status == Status::Failed));
    assert!(String::from_utf8_lossy(&out.stderr).contains("failed"));
}

#[test]
fn realization_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g2.json");
    let p = path.to_str().unwrap();
    let out = run(&["realization", "--series", "G", "--rank", "2", "--out", p]);
    assert_eq!(out.status.code(), Some(0));
    let from_file = run(&["verify", "--realization", p, "--subset", "0"]);
    let builtin = run(&["verify", "--series", "G", "--rank", "2", "--subset", "0"]);
    assert_eq!(from_file.status.code(), Some(0));
    let mut from_file = without_times(records(&from_file));
    assert_eq!(from_file[0].form, "custom");
    from_file[0].form = "split".into();
    assert_eq!(from_file, without_times(records(&builtin)));
}

fn corrupt(path: &Path) {
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    // breaks the Jacobi identity
    v["brackets"][0][3] = Value::from("7");
    std::fs::write(path, v.to_string()).unwrap();
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a2.json");
    let p = path.to_str().unwrap();
    assert_eq!(run(&["realization", "--series", "A", "--rank", "2", "--out", p]).status.code(), Some(0));
    corrupt(&path);
    assert_eq!(run(&["verify", "--realization", p]).status.code(), Some(2));

    std::fs::write(&path, "{ not json").unwrap();
    assert_eq!(run(&["verify", "--realization", p]).status.code(), Some(2));

    let missing = dir.path().join("no/such/dir/out.json");
    let out = run(&["verify", "--series", "A", "--rank", "1", "--out", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    assert_eq!(run(&["verify", "--series", "A", "--rank", "2", "--subset", "0,1"]).status.code(), Some(0));
    assert_eq!(run(&["verify", "--series", "A", "--rank", "2", "--subset", "5"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--series", "A", "--rank", "2", "--subset", "x"]).status.code(), Some(2));
    let float = ["verify", "--series", "A", "--rank", "2", "--scalar", "float", "--tol"];
    assert_eq!(run(&[&float[..], &["-1"]].concat()).status.code(), Some(2));
    assert_eq!(run(&[&float[..], &["nan"]].concat()).status.code(), Some(2));
    assert_eq!(run(&["verify", "--series", "A", "--rank", "2", "--tol", "-1"]).status.code(), Some(0));

    let j = dir.path().join("a1.json");
    assert_eq!(run(&["verify", "--series", "A", "--rank", "1", "--out", j.to_str().unwrap()]).status.code(), Some(0));
    let out = run(&["export", "--input", j.to_str().unwrap(), "--out", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["export", "--input", dir.path().join("absent.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(run(&["verify", "--series", "Q", "--rank", "2"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--series", "A"]).status.code(), Some(2));
}

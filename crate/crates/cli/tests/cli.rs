use std::fs;
use std::process::{Command, Output};

fn scross(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_scross")).args(args).output().expect("run scross")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn verify_single_instance_csv() {
    let out = scross(&["verify", "--n", "9", "--k", "4", "--s", "2", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,k,s,l,check,formula_value,oracle_value,verdict,millis");
    assert!(lines[1].starts_with("9,4,2,2,theorem,82,82,pass,"), "{}", lines[1]);
}

#[test]
fn theorem_sweep_writes_six_rows() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.csv");
    let out = scross(&[
        "verify", "--k-range", "3,4", "--s", "2", "--l-range", "0..2", "--format", "csv", "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let csv = fs::read_to_string(&path).unwrap();
    assert_eq!(csv.lines().count(), 7);
    assert!(csv.lines().skip(1).all(|l| l.contains(",pass,")));
}

#[test]
fn json_report_is_structured() {
    let out = scross(&["check-chains", "--k-range", "3..6", "--l-range", "0..3", "--jobs", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["summary"]["fail"], 0);
    let total = v["summary"]["total"].as_u64().unwrap();
    assert_eq!(v["records"].as_array().unwrap().len() as u64, total);
}

#[test]
fn empty_grid_is_valid_and_passes() {
    // every requested n is below k, so no instance survives
    let out = scross(&["verify", "--k", "3", "--s", "2", "--n-range", "1,2"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["summary"]["total"], 0);
}

#[test]
fn configuration_errors_exit_two() {
    assert_eq!(scross(&["verify", "--n", "5", "--k", "3", "--s", "3"]).status.code(), Some(2));
    assert_eq!(scross(&["verify", "--k-range", "5..3", "--l-range", "0"]).status.code(), Some(2));
    assert_eq!(scross(&["sweep", "--k", "3", "--l-range", "0", "--checks", "bogus"]).status.code(), Some(2));
    assert_eq!(scross(&["verify", "--k", "3"]).status.code(), Some(2));
}

#[test]
fn single_instance_past_the_cap_exits_two() {
    let out = scross(&["verify", "--n", "12", "--k", "5", "--s", "2", "--cap", "100"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("skipped: cap"));
}

#[test]
fn sweeps_tolerate_skips() {
    let out = scross(&["sweep", "--k-range", "3..4", "--l-range", "0..1", "--checks", "hm,lemma2", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains(",skipped,"));
}

#[test]
fn emit_dot_is_deterministic() {
    let a = scross(&["emit-dot", "--n", "9", "--k", "4", "--s", "2"]);
    let b = scross(&["emit-dot", "--n", "9", "--k", "4", "--s", "2"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let doc = stdout(&a);
    assert!(doc.contains("c2_1 -> c2_2 [style=bold, dir=both, label=\"2\"];"));
    let w = scross(&["emit-dot", "--n", "7", "--k", "3", "--s", "2", "--view", "w"]);
    assert_eq!(stdout(&w).matches(" -> ").count(), 1);
    assert_eq!(scross(&["emit-dot", "--n", "6", "--k", "3", "--s", "1"]).status.code(), Some(2));
}

#[test]
fn shift_closure_of_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.txt");
    let b = dir.path().join("b.txt");
    fs::write(&a, "# a family\n2,3,5\n3,4,5\n").unwrap();
    fs::write(&b, "2,3,4\n1,3,5\n").unwrap();
    let out = scross(&["shift", a.to_str().unwrap(), "--n", "5"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "1,2,3\n1,2,4\n");

    let out = scross(&["shift", a.to_str().unwrap(), "--n", "5", "--partner", b.to_str().unwrap(), "--s", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("# A\n"));
    assert!(String::from_utf8_lossy(&out.stderr).contains("before true, after true"));

    fs::write(&b, "1,2,x\n").unwrap();
    let out = scross(&["shift", b.to_str().unwrap(), "--n", "5"]);
    assert_eq!(out.status.code(), Some(2));
}

use std::path::PathBuf;
use std::process::{Command, Output};

use invar_core::analysis::AnalysisReport;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(format!("{name}.json"))
}

fn invar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_invar")).args(args).env_remove("INVAR_CLOSURE_CAP").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("invar-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn analyze_mv2_reports_the_ideal() {
    let out = invar(&["analyze", fixture("mv2_p3_m2").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report = AnalysisReport::from_json(&stdout(&out)).unwrap();
    let bf = report.bruteforce.done().unwrap();
    assert_eq!(bf.degrees, vec![1, 1, 3, 3]);
    // orbit products y^3 - x^2 y written with coefficients in F_3
    assert_eq!(bf.generators[2], "x1^2*y1 + 2*y1^3");
    let summary = report.summary.unwrap();
    assert_eq!(summary.methods_agree, Some(true));
    assert_eq!(format!("{:?}", summary.polynomiality), "NotPolynomial");
}

#[test]
fn json_round_trip() {
    for name in ["stong_p2", "f3_order27", "cyclic_p3"] {
        let text = stdout(&invar(&["analyze", fixture(name).to_str().unwrap()]));
        assert_eq!(AnalysisReport::from_json(&text).unwrap().to_json(), text, "{name}");
    }
}

#[test]
fn text_format_and_out_file() {
    let path = scratch("report.txt", "");
    let out = invar(&["analyze", fixture("identity_p2_n3").to_str().unwrap(), "--format", "text", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("polynomiality: polynomial"));
    assert!(text.contains("generators: [x1, x2, x3]"));
}

#[test]
fn constructive_refusal_exit_code() {
    let cyclic = fixture("cyclic_p3");
    assert_eq!(invar(&["analyze", cyclic.to_str().unwrap(), "--method", "constructive"]).status.code(), Some(2));
    // with both methods the refusal is recorded and the brute force still runs
    let out = invar(&["analyze", cyclic.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report = AnalysisReport::from_json(&stdout(&out)).unwrap();
    assert!(report.constructive.failure().is_some());
    assert!(report.bruteforce.done().is_some());
    // a refuted sequence given on the command line
    let mv2 = fixture("mv2_p2_m2");
    let out = invar(&["hilbert", mv2.to_str().unwrap(), "--method", "constructive", "--sequence", "1,4"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sequence_option_bypasses_search() {
    let out = invar(&["analyze", fixture("mv2_p2_m2").to_str().unwrap(), "--sequence", "2,4", "--verify", "off"]);
    assert_eq!(out.status.code(), Some(0));
    let report = AnalysisReport::from_json(&stdout(&out)).unwrap();
    let s = report.structure.report().unwrap();
    assert_eq!(s.sequence, vec![2, 4]);
    assert_eq!(format!("{:?}", s.source), "Option");
    assert!(report.constructive.done().unwrap().checks.is_empty());
}

#[test]
fn parse_errors_exit_3() {
    let missing = invar(&["analyze", "/nonexistent/spec.json"]);
    assert_eq!(missing.status.code(), Some(3));
    let bad_json = scratch("bad.json", "{ not json");
    assert_eq!(invar(&["analyze", bad_json.to_str().unwrap()]).status.code(), Some(3));
    let empty = scratch("empty.json", r#"{"field": {"p": 2}, "n": 2, "generators": []}"#);
    let out = invar(&["analyze", empty.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("generators"));
    let bad_field = scratch("field.json", r#"{"field": {"p": 2, "ext_modulus": [1, 0, 1]}, "n": 1, "generators": [[[1]]]}"#);
    assert_eq!(invar(&["analyze", bad_field.to_str().unwrap()]).status.code(), Some(3));
    assert_eq!(invar(&["analyze"]).status.code(), Some(3));
}

#[test]
fn closure_cap_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_invar"))
        .args(["analyze", fixture("f3_order27").to_str().unwrap()])
        .env("INVAR_CLOSURE_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("closure"));
}

#[test]
fn invariants_command() {
    let out = invar(&["invariants", fixture("mv2_p3_m2").to_str().unwrap(), "--degree", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("\"dimension\": 2"), "{text}");
    let out = invar(&["invariants", fixture("stong_p2").to_str().unwrap(), "--degree", "2", "--format", "text"]);
    assert!(stdout(&out).contains("group_order: 8"));
}

#[test]
fn hilbert_bruteforce_with_bound() {
    let out = invar(&["hilbert", fixture("f3_order27").to_str().unwrap(), "--method", "bruteforce", "--degree-bound", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("\"kind\": \"user_bound\""), "{text}");
    assert!(text.contains("\"heuristic\": true"));
}

#[test]
fn non_triangular_input_is_conjugated() {
    // x1 -> x1 + x2 fixes x2: upper triangular in the given basis
    let spec = scratch("upper.json", r#"{"field": {"p": 3}, "n": 2, "generators": [[[1, 1], [0, 1]]]}"#);
    let out = invar(&["analyze", spec.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report = AnalysisReport::from_json(&stdout(&out)).unwrap();
    assert!(!report.triangularization.already_triangular);
    assert_eq!(report.summary.unwrap().degrees, vec![1, 3]);
}

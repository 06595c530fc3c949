use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_arithchar"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn scratch(name: &str, contents: &[u8]) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("arithchar-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

/// Feed a verb's output back through `verify`.
fn round_trip(name: &str, args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stdout));
    let path = scratch(name, &out.stdout);
    let check = run(&["verify", "--input", path.to_str().unwrap()]);
    let report = json_of(&check);
    assert_eq!(check.status.code(), Some(0), "{args:?}: {report}");
    assert_eq!(report["verified"], Value::Bool(true));
    report
}

#[test]
fn every_verb_round_trips() {
    round_trip("rootsys.json", &["rootsys", "--type", "C3", "--weyl"]);
    let r = round_trip("chevalley.json", &["chevalley", "--type", "G2", "--verify"]);
    assert_eq!(r["checks"]["chevalley_basis"], Value::Bool(true));
    round_trip("chevalley-center.json", &["chevalley", "--type", "A2", "--center", "1"]);
    round_trip("chi.json", &["chi", "--matrix", "[[0,1],[-2,3]]"]);
    round_trip("chi-point.json", &["chi", "--torus-point", "[1,2]", "--type", "B2"]);
    round_trip("degree.json", &["degree", "--field", "Q(i)", "--ideal", "[\"1 + w\"]", "--metrics", "[\"0.5\"]"]);
    round_trip(
        "slope.json",
        &["slope", "--torsor", r#"{"field":"Q(sqrt(-5))","ideals":[["2","1 + w"],["1"]]}"#, "--char", "3"],
    );
    let r = round_trip("curve.json", &["curve", "--matrix", "[[1,1,0],[0,2,1],[1,0,3]]", "--fibers", "50"]);
    assert_eq!(r["checks"]["covering_degree"], Value::Bool(true));
    round_trip("cameral.json", &["curve", "--matrix", "[[1,2],[3,4]]", "--cameral"]);
}

#[test]
fn tampered_document_fails_verification() {
    let out = run(&["chi", "--matrix", "[[2,0],[0,3]]"]);
    let mut doc = json_of(&out);
    assert_eq!(doc["invariants"], serde_json::json!(["5", "6"]));
    doc["invariants"][1] = Value::String("7".into());
    let path = scratch("tampered.json", doc.to_string().as_bytes());
    let check = run(&["verify", "--input", path.to_str().unwrap()]);
    assert_eq!(check.status.code(), Some(1));
    assert_eq!(json_of(&check)["verified"], Value::Bool(false));
}

#[test]
fn inline_file_and_at_forms_agree() {
    let path = scratch("matrix.json", b"[[1,2],[3,4]]");
    let p = path.to_str().unwrap();
    let at = format!("@{p}");
    let a = run(&["chi", "--matrix", "[[1,2],[3,4]]"]).stdout;
    assert_eq!(a, run(&["chi", "--matrix", p]).stdout);
    assert_eq!(a, run(&["chi", "--matrix", &at]).stdout);
}

#[test]
fn spectral_fixture() {
    let doc = json_of(&run(&["curve", "--matrix", "[[0,2],[1,0]]"]));
    assert_eq!(doc["kind"], "spectral");
    assert_eq!(doc["poly"], serde_json::json!(["1", "0", "-2"]));
    assert_eq!(doc["disc"], "8");
    assert_eq!(doc["ramified"], serde_json::json!([{"p": 2, "pattern": [[1, 2]]}]));
}

#[test]
fn degree_of_non_principal_ideal() {
    let doc = json_of(&run(&["degree", "--field", "Q(sqrt(-5))", "--ideal", "[[2,0],[1,1]]"]));
    let deg: f64 = doc["degree"].as_str().unwrap().parse().unwrap();
    assert!((deg + 2f64.ln()).abs() < 1e-12);
}

#[test]
fn metric_document_checks_compatibility() {
    let good = r#"{"kind":"metric","n":2,"place":"real","h":[[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]}"#;
    let out = run(&["verify", "--input", good]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let bad = r#"{"kind":"metric","n":2,"place":"real","h":[[2,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]}"#;
    let out = run(&["verify", "--input", bad]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn domain_errors_are_json_on_stdout() {
    let out = run(&["degree", "--ideal", "[\"0\"]"]);
    assert_eq!(out.status.code(), Some(1));
    let doc = json_of(&out);
    assert!(doc["error"]["kind"].is_string());
    assert!(doc["error"]["message"].is_string());

    let out = run(&["curve", "--matrix", "[[1,0],[0,1]]", "--fibers", "20"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_of(&out)["error"]["kind"], "DegenerateCurve");

    let out = run(&["curve", "--matrix", "[[1,3],[0,2]]", "--twist", "[\"2\"]"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(json_of(&out)["error"].is_object());
}

#[test]
fn usage_errors_exit_two() {
    for args in [&["rootsys"][..], &["frobnicate"], &["rootsys", "--type", "A1", "--bogus"], &["chi"]] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty());
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn unsupported_type_is_rejected() {
    let out = run(&["rootsys", "--type", "E6"]);
    assert_ne!(out.status.code(), Some(0));
}

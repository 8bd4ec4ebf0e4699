use std::process::{Command, Output};

use jsonschema::JSONSchema;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_torsionlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn schema() -> JSONSchema {
    let text = include_str!("../schema/report.schema.json");
    let schema: Value = serde_json::from_str(text).unwrap();
    JSONSchema::compile(&schema).expect("schema compiles")
}

/// Runs with `--format json`, checks the exit code and validates the report.
fn json(args: &[&str], code: i32) -> Value {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let out = run(&full);
    assert_eq!(
        out.status.code(),
        Some(code),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    if let Err(errors) = schema().validate(&v) {
        let msgs: Vec<String> = errors
            .map(|e| format!("{e} at {}", e.instance_path))
            .collect();
        panic!("{args:?} does not match the schema: {msgs:?}");
    }
    v
}

#[test]
fn rk_text_reports_agreement() {
    let out = run(&["rk", "--prime", "3", "--k", "1"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("xi*eta*(xi^8 - eta^8)"));
    assert!(text.contains("pipelines agree"));
}

#[test]
fn mackey_json_summary() {
    let v = json(&["mackey", "--n", "6", "--p", "3"], 0);
    let r = &v["result"];
    assert_eq!(r["orbits"].as_array().unwrap().len(), 4);
    assert_eq!(r["summary"]["surviving"], 2);
    assert_eq!(r["summary"]["scalar"], 2);
    assert_eq!(r["summary"]["invertible"], true);
    let v = json(&["mackey", "--n", "9", "-p", "3"], 0);
    assert_eq!(v["result"]["summary"]["invertible"], false);
}

#[test]
fn verdict_json() {
    let v = json(&["verdict", "--n", "6", "--p", "3", "--I", "0,1"], 0);
    assert_eq!(v["result"]["status"], "Zero");
    assert_eq!(v["result"]["citation"], "Thm 1.2");
    assert_eq!(v["result"]["I"], serde_json::json!([0, 1]));
    let v = json(&["verdict", "--n", "9", "--p", "3", "--I", "0,1"], 0);
    assert_eq!(v["result"]["status"], "Unknown");
    assert!(v["result"]["citation"].is_null());
    let v = json(
        &["verdict", "--n", "6", "--p", "3", "--I", "1", "--k", "0"],
        0,
    );
    assert_eq!(v["result"]["differential"]["index"], 8);
}

#[test]
fn seed_is_recorded() {
    let v = json(&["normalize", "--word", "P1 P1", "--seed", "99"], 0);
    assert_eq!(v["config"]["seed"], 99);
    assert_eq!(v["result"]["normal_form"], "2*P2");
}

#[test]
fn every_subcommand_matches_schema() {
    json(&["apply", "--word", "B P1", "--expr", "xi*b - a*eta"], 0);
    json(
        &["apply", "--model", "lens", "--word", "P1", "--expr", "v^2"],
        0,
    );
    json(&["normalize", "-p", "5", "--word", "P5 B P1"], 0);
    json(&["rk", "-p", "5", "--k", "1"], 0);
    json(&["verify-y", "-p", "3", "--k", "1"], 0);
    json(&["kz3", "-p", "3", "--maxdeg", "27"], 0);
    json(&["invariants", "-p", "3", "--maxdeg", "6"], 0);
    json(
        &[
            "invariants",
            "-p",
            "5",
            "--expr",
            "xi*eta^5 - xi^5*eta",
            "--mode",
            "generators",
        ],
        0,
    );
    json(
        &[
            "invariants",
            "-p",
            "3",
            "--expr",
            "xi",
            "--matrix",
            "1,1,0,1",
        ],
        0,
    );
    json(&["cosets", "--W", "3,2", "--exhaustive", "--F", "1,4"], 0);
    json(&["verify-all", "--only", "C01", "--only", "C08"], 0);
}

#[test]
fn verification_failure_exits_one() {
    let v = json(&["invariants", "-p", "3", "--expr", "xi^2"], 1);
    assert_eq!(v["ok"], false);
    assert!(v["result"]["verdict"]["witness"].is_string());
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(
        run(&["mackey", "--n", "7", "--p", "3"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["verdict", "--n", "6", "--p", "4", "--I", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["verdict", "--n", "6", "--I", "1,0"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["normalize", "--word", "Q1"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(run(&["rk"]).status.code(), Some(2));
    let v = json(&["apply", "--word", "P1", "--expr", "zz"], 2);
    assert!(v["error"].as_str().unwrap().contains("zz"));
}

#[test]
fn budget_is_validated() {
    let out = Command::new(env!("CARGO_BIN_EXE_torsionlab"))
        .args(["verify-all", "--only", "C01"])
        .env("TORSIONLAB_BUDGET", "soon")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn text_and_json_agree() {
    let v = json(&["cosets", "--W", "2,2", "-p", "3"], 0);
    let text = String::from_utf8(run(&["cosets", "--W", "2,2", "-p", "3"]).stdout).unwrap();
    for orbit in v["result"]["orbits"].as_array().unwrap() {
        let k: Vec<String> = orbit["K"]
            .as_array()
            .unwrap()
            .iter()
            .map(|x| x.to_string())
            .collect();
        assert!(text.contains(&format!("K: [{}]", k.join(", "))));
    }
}

#[test]
fn verify_all_is_idempotent() {
    let a = json(&["verify-all", "--only", "C09", "--only", "X02"], 0);
    let b = json(&["verify-all", "--only", "X02", "--only", "C09"], 0);
    let strip = |v: &Value| -> Vec<(Value, Value, Value)> {
        v["result"]["checks"]
            .as_array()
            .unwrap()
            .iter()
            .map(|c| (c["id"].clone(), c["passed"].clone(), c["detail"].clone()))
            .collect()
    };
    assert_eq!(strip(&a), strip(&b));
}

#[test]
fn schema_rejects_malformed_reports() {
    let mut v = json(&["verdict", "--n", "6", "--p", "3", "--I", "0"], 0);
    v["result"]["status"] = "Maybe".into();
    assert!(schema().validate(&v).is_err());
    let mut v = json(&["mackey", "--n", "6", "--p", "3"], 0);
    v["result"]["summary"]
        .as_object_mut()
        .unwrap()
        .remove("scalar");
    assert!(schema().validate(&v).is_err());
    let mut v = json(&["rk", "--k", "0"], 0);
    v["config"].as_object_mut().unwrap().remove("seed");
    assert!(schema().validate(&v).is_err());
}

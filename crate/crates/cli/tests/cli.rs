use std::process::{Command, Output};

fn su21(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_su21")).args(args).env_remove("SU21_THREADS").output().unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn verify_filters_suites() {
    let o = su21(&["verify", "--suites", "structure"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let checks = v["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    assert!(checks.iter().all(|c| c["id"].as_str().unwrap().starts_with("structure.")));
    assert_eq!(v["summary"]["failed"], 0);
    for key in ["id", "anchor", "status", "witness", "elapsed_ms"] {
        assert!(checks[0].get(key).is_some(), "missing {key}");
    }
}

#[test]
fn reports_are_deterministic() {
    let strip = |o: &Output| {
        let mut v = json(o);
        for c in v["checks"].as_array_mut().unwrap() {
            c["elapsed_ms"] = 0.into();
        }
        v
    };
    let args = ["verify", "--suites", "clifford,algebra", "--threads", "2"];
    assert_eq!(strip(&su21(&args)), strip(&su21(&args)));
}

#[test]
fn exit_codes() {
    assert_eq!(su21(&["verify", "--p1", "2", "--p2", "1", "--suites", "module"]).status.code(), Some(2));
    assert_eq!(su21(&["verify", "--suites", "nonsense"]).status.code(), Some(2));
    assert_eq!(su21(&["verify", "--window", "2,2", "--suites", "induction"]).status.code(), Some(2));
    assert_eq!(su21(&["reduce", "--expr", "E1^(x)"]).status.code(), Some(2));
    assert_eq!(su21(&["reduce", "--expr", "1 (x) F2 (x) w3"]).status.code(), Some(2));
    assert_eq!(su21(&["build-module", "--p1", "1/2", "--p2", "-1"]).status.code(), Some(2));
}

#[test]
fn config_file_merges_under_flags() {
    let dir = std::env::temp_dir().join(format!("su21-cfg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("run.json");
    std::fs::write(&path, r#"{"suites": ["structure"], "p1": "4/3", "p2": "-5/3"}"#).unwrap();
    let o = su21(&["verify", "--config", path.to_str().unwrap(), "--p1", "1", "--p2", "-1"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["config"]["p"], serde_json::json!(["1/1", "-1/1"]));
    assert_eq!(v["config"]["suites"], serde_json::json!(["structure"]));
    std::fs::write(&path, "{").unwrap();
    assert_eq!(su21(&["verify", "--config", path.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn build_module_round_trips() {
    let o = su21(&["build-module", "--window", "2,2"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: su21_cli::serialize::TransitionTableDoc = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc.window, [2, 2]);
    assert_eq!(doc.entries.len(), 9);
    let table = doc.to_table().unwrap();
    assert_eq!(su21_cli::serialize::TransitionTableDoc::from_table(&table), doc);
}

#[test]
fn cohomology_command() {
    let o = su21(&["cohomology", "--window", "3,3"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["dim_w"], 2);
    assert_eq!(v["kernel_dimension"], 2);
}

#[test]
fn reduce_command() {
    let o = su21(&["reduce", "--expr", "F1 (x) 1 (x) w1"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["certificate"]["status"], "pass");
    let combo = v["combo"].as_array().unwrap();
    assert_eq!(combo.len(), 2);
    assert!(combo.iter().all(|t| t["coefficient"] == "1/2"));
    let o = su21(&["reduce", "--expr", "1 (x) F1 (x) w1"]);
    let v = json(&o);
    assert_eq!(v["combo"][0]["coefficient"], "-1/1");
    assert_eq!(v["combo"][0]["generator"], "(E1^0 F2^0 (x) F2) (x) w2");
}

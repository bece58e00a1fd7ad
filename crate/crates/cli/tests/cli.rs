use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn xcohom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_xcohom"))
        .args(args)
        .env_remove("XCOHOM_MAX_SEARCH")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON document")
}

fn scratch(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name)
}

#[test]
fn weak_h2_of_a3() {
    let out = xcohom(&["h2", "--fixture", "XM_A3", "--pi", "C3", "--mode", "weak"]);
    assert!(out.status.success());
    let doc = json(&out);
    assert_eq!(doc["counts"]["classes"], 2);
    assert_eq!(doc["result"]["classes"]["mode"], "weak");
    let thick = json(&xcohom(&["h2", "--fixture", "XM_A3", "--pi", "C3"]));
    assert_eq!(thick["counts"]["classes"], 3);
}

#[test]
fn obstruction_table_for_obs() {
    let doc = json(&xcohom(&["obstruction", "--fixture", "XM_OBS", "--all"]));
    let reports = doc["result"]["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 4);
    let labels = doc["result"]["q_labels"].as_array().unwrap();
    let by_label = |label: &str| {
        let a = labels.iter().position(|l| l == label).unwrap();
        reports.iter().find(|r| r["a"] == a).unwrap()
    };
    assert_eq!(by_label("[l]")["vanishes"], false);
    assert_eq!(by_label("[l^2]")["vanishes"], true);
    assert_eq!(by_label("[1]")["vanishes"], true);
    assert!(by_label("[l]")["bitorsor_witness"].is_null());

    let one = json(&xcohom(&["obstruction", "--fixture", "XM_OBS", "--element", "l^5"]));
    assert_eq!(one["result"]["reports"][0]["vanishes"], false);
}

#[test]
fn lists_five_fixtures() {
    let doc = json(&xcohom(&["fixtures"]));
    assert_eq!(doc["counts"]["fixtures"], 5);
    let names: Vec<&str> = doc["result"]["fixtures"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| f["name"].as_str().unwrap())
        .collect();
    assert_eq!(names, ["XM_T22", "XM_ID2", "XM_A2", "XM_A3", "XM_OBS"]);
}

#[test]
fn reports_are_deterministic() {
    for args in [
        &["classify-ext", "--fixture", "XM_A3", "--pi", "C3", "--mode", "weak"][..],
        &["bitorsors", "--fixture", "XM_OBS"][..],
        &["bouquet-roundtrip", "--fixture", "XM_T22"][..],
    ] {
        let a = xcohom(args);
        let b = xcohom(args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout);
    }
    let timed = json(&xcohom(&["h1", "--fixture", "XM_T22", "--timing"]));
    assert!(timed["timing_ms"].is_number());
    let untimed = json(&xcohom(&["h1", "--fixture", "XM_T22"]));
    assert!(untimed.get("timing_ms").is_none());
}

#[test]
fn json_model_has_the_builtin_digest() {
    let doc = json(&xcohom(&["validate", "--fixture", "XM_OBS"]));
    let path = scratch("xm_obs_copy.json");
    std::fs::write(&path, serde_json::to_string(&doc["result"]["model"]).unwrap()).unwrap();
    let copy = json(&xcohom(&["validate", "--model", path.to_str().unwrap()]));
    assert_eq!(copy["inputs"]["digest"], doc["inputs"]["digest"]);
    assert_eq!(copy["inputs"]["model"], "xm_obs_copy");
}

#[test]
fn broken_peiffer_model_exits_with_validation_error() {
    let path = scratch("s3_trivial.json");
    std::fs::write(
        &path,
        r#"{"M":"S3","L":"C1","boundary":[0,0,0,0,0,0],"l_action":[[0,1,2,3,4,5]],
           "G":"C1","g_on_M":[[0,1,2,3,4,5]],"g_on_L":[[0]]}"#,
    )
    .unwrap();
    let out = xcohom(&["validate", "--model", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let doc = json(&out);
    assert_eq!(doc["error"]["kind"], "validation_error");
    assert_eq!(doc["error"]["witness"]["kind"], "cm2_violation");
    assert!(doc["error"]["witness"]["n"].is_number());
}

#[test]
fn parse_errors_exit_2() {
    assert_eq!(xcohom(&["h1", "--fixture", "XM_NOPE"]).status.code(), Some(2));
    let path = scratch("garbage.json");
    std::fs::write(&path, "{ not json").unwrap();
    assert_eq!(
        xcohom(&["h1", "--model", path.to_str().unwrap()]).status.code(),
        Some(2)
    );
    assert_eq!(
        xcohom(&["h2", "--fixture", "XM_T22", "--mode", "medium"]).status.code(),
        Some(2)
    );
    assert_eq!(xcohom(&["h1"]).status.code(), Some(2));
}

#[test]
fn budget_exhaustion_exits_4() {
    let out = xcohom(&["h2", "--fixture", "XM_OBS", "--max-search", "10"]);
    assert_eq!(out.status.code(), Some(4));
    assert_eq!(json(&out)["error"]["witness"]["cap"], 10);
    let out = Command::new(env!("CARGO_BIN_EXE_xcohom"))
        .args(["h1", "--fixture", "XM_T22"])
        .env("XCOHOM_MAX_SEARCH", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn table_format() {
    let out = xcohom(&["classify-ext", "--fixture", "XM_A2", "--pi", "C2", "--format", "table"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("element orders"));
    assert!(text.contains("1:1 2:1 4:2"));
    assert!(text.contains("1:1 2:3"));
}

//! End-to-end tests against the built binary: exit codes, report content,
//! determinism and round-trips.

use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sgring-lab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(output: &Output) -> serde_json::Value {
    assert!(
        output.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    serde_json::from_slice(&output.stdout).expect("valid JSON on stdout")
}

#[test]
fn analyze_reports_the_order2_fixture() {
    let out = run(&["analyze", fixture("order2_rank3.json").to_str().unwrap(), "--format", "json"]);
    let v = json_of(&out);
    assert_eq!(v["schema"], "sgring-lab/1");
    assert_eq!(v["apery"]["size"], 4);
    assert_eq!(v["verdicts"]["type"], 1);
    assert_eq!(v["verdicts"]["cohen_macaulay"], true);
    assert_eq!(v["verdicts"]["normal"], false);
    assert_eq!(v["verdicts"]["witnesses"]["normal"], serde_json::json!([2, 1, 1]));
}

#[test]
fn analyze_reports_the_mixed_grading_fixture() {
    let out = run(&[
        "analyze",
        fixture("mixed_grading.json").to_str().unwrap(),
        "--format",
        "json",
        "--verify",
    ]);
    let v = json_of(&out);
    assert_eq!(v["verdicts"]["almost_gorenstein"], true);
    assert_eq!(v["orthogonal"]["order"], 3);
    assert_eq!(v["orthogonal"]["extreme_hint_consistent"], true);
    assert_eq!(
        v["orthogonal"]["generators"],
        serde_json::json!([[3, 0], [0, 3], [6, 1], [3, 2]])
    );
    let witness = &v["almost_gorenstein"]["witnesses"][0];
    assert_eq!(witness["ulrich_source"], serde_json::json!([1, 2]));
    assert_eq!(witness["socle_source"], serde_json::json!([3, 1]));
    assert_eq!(witness["degree_source"], 3);
    assert_eq!(witness["degree_orthogonal"], -1);
    assert_eq!(v["verdicts"]["a_invariant_source"], -2);
    for check in v["verification"].as_array().unwrap() {
        assert_eq!(check["passed"], true, "{}", check["name"]);
    }
}

#[test]
fn verdicts_are_data_not_exit_codes() {
    let out = run(&["analyze", fixture("non_cm.json").to_str().unwrap(), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["verdicts"]["cohen_macaulay"], false);
    assert_eq!(v["verdicts"]["almost_gorenstein"], serde_json::Value::Null);
    assert!(v["verdicts"]["witnesses"]["cohen_macaulay"].is_array());
    assert!(v.get("canonical").is_none());
}

#[test]
fn analyze_rejects_empty_generator_lists() {
    let out = run(&["analyze", fixture("empty.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn analyze_rejects_non_simplicial_input() {
    let out = run(&["analyze", fixture("non_simplicial.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("not simplicial"), "stderr: {stderr}");
}

#[test]
fn analyze_reports_resource_limits() {
    let out = run(&[
        "analyze",
        fixture("type3.json").to_str().unwrap(),
        "--max-apery",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("cap"), "stderr: {stderr}");
}

#[test]
fn analyze_respects_the_box_limit() {
    let out = run(&[
        "analyze",
        fixture("type3.json").to_str().unwrap(),
        "--max-box",
        "10",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("volume"), "stderr: {stderr}");
}

#[test]
fn analyze_matrix_mode_reads_column_layout() {
    let out = run(&[
        "analyze",
        fixture("big_transform.matrix").to_str().unwrap(),
        "--matrix",
        "--format",
        "json",
    ]);
    let v = json_of(&out);
    assert_eq!(v["orthogonal"]["order"], 91);
    assert_eq!(
        v["orthogonal"]["generators"][0],
        serde_json::json!([91, 0, 0])
    );
}

#[test]
fn cyclic_classifies_ag_pair() {
    let out = run(&["cyclic", "7", "4", "--format", "json", "--verify"]);
    let v = json_of(&out);
    assert_eq!(v["almost_gorenstein"], true);
    assert_eq!(v["hj_expansion"], serde_json::json!([2, 4]));
    assert_eq!(v["ulrich"], serde_json::json!([3, 1]));
    assert_eq!(v["cross_validation"]["pipeline"], true);
}

#[test]
fn cyclic_classifies_non_ag_pair() {
    let out = run(&["cyclic", "11", "8", "--format", "json"]);
    let v = json_of(&out);
    assert_eq!(v["almost_gorenstein"], false);
    assert_eq!(v["hj_expansion"], serde_json::json!([2, 2, 3, 2]));
    assert!(v.get("ulrich").is_none());
}

#[test]
fn cyclic_rejects_non_coprime_input() {
    let out = run(&["cyclic", "4", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn batch_cyclic_range_counts_verdicts() {
    let out = run(&["batch", "--cyclic-range", "2..11", "--format", "json"]);
    let v = json_of(&out);
    assert_eq!(v["summary"]["items"], 41);
    assert_eq!(v["summary"]["ag"], 38);
    assert_eq!(v["summary"]["not_ag"], 3);
    assert_eq!(v["summary"]["errors"], 0);
}

#[test]
fn batch_range_with_verification_cross_checks_each_item() {
    let out = run(&["batch", "--cyclic-range", "2..6", "--format", "json", "--verify"]);
    let v = json_of(&out);
    assert_eq!(v["summary"]["errors"], 0);
    for item in v["items"].as_array().unwrap() {
        let cv = &item["cross_validation"];
        assert_eq!(cv["criterion"], item["almost_gorenstein"]);
        assert_eq!(cv["pipeline"], item["almost_gorenstein"]);
        assert_eq!(cv["cohen_macaulay"], true);
        assert_eq!(cv["normal"], true);
    }
}

#[test]
fn batch_isolates_item_failures() {
    let out = run(&[
        "batch",
        fixture("order2_rank3.json").to_str().unwrap(),
        fixture("non_simplicial.json").to_str().unwrap(),
        "--format",
        "json",
    ]);
    // both items parsed, so the batch succeeds with the failure embedded
    let v = json_of(&out);
    assert_eq!(v["summary"]["items"], 2);
    assert_eq!(v["summary"]["errors"], 1);
    assert_eq!(v["items"][1]["exit_code"], 4);
}

#[test]
fn batch_empty_input_summarizes_zero_items() {
    let out = run(&["batch", "--format", "json"]);
    let v = json_of(&out);
    assert_eq!(v["summary"]["items"], 0);
}

#[test]
fn batch_exits_2_on_unreadable_items() {
    let out = run(&["batch", "/nonexistent/input.json", "--format", "json"]);
    assert_eq!(out.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["summary"]["errors"], 1);
}

#[test]
fn output_is_byte_deterministic() {
    for format in ["text", "json"] {
        let a = run(&["analyze", fixture("type3.json").to_str().unwrap(), "--format", format]);
        let b = run(&["analyze", fixture("type3.json").to_str().unwrap(), "--format", format]);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{format} output differs between runs");
    }
}

#[test]
fn json_reports_round_trip() {
    let out = run(&[
        "analyze",
        fixture("mixed_grading.json").to_str().unwrap(),
        "--format",
        "json",
    ]);
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    let reserialized = serde_json::to_string_pretty(&value).unwrap();
    let reparsed: serde_json::Value = serde_json::from_str(&reserialized).unwrap();
    assert_eq!(value, reparsed);

    let batch = run(&["batch", "--cyclic-range", "2..5", "--format", "json"]);
    let text = String::from_utf8(batch.stdout).unwrap();
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    let reparsed: serde_json::Value =
        serde_json::from_str(&serde_json::to_string_pretty(&value).unwrap()).unwrap();
    assert_eq!(value, reparsed);
}

#[test]
fn timing_is_opt_in() {
    let without = json_of(&run(&[
        "analyze",
        fixture("order2_rank3.json").to_str().unwrap(),
        "--format",
        "json",
    ]));
    assert!(without.get("timing_ms").is_none());
    let with = json_of(&run(&[
        "analyze",
        fixture("order2_rank3.json").to_str().unwrap(),
        "--format",
        "json",
        "--timing",
    ]));
    assert!(with.get("timing_ms").is_some());
}

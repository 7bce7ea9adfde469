//! End-to-end checks of the `reeb` binary: exit codes, JSON shapes, and
//! the documented subcommand behaviors.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};

fn reeb() -> Command {
    Command::new(env!("CARGO_BIN_EXE_reeb"))
}

fn write_json(dir: &Path, name: &str, value: &Value) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, serde_json::to_string_pretty(value).unwrap()).unwrap();
    path
}

fn target_json(ranks: &[usize]) -> Value {
    json!({
        "n": ranks.len() - 1,
        "groups": ranks.iter().map(|&r| json!({"rank": r, "torsion": []})).collect::<Vec<_>>(),
    })
}

fn stdout_json(output: &Output) -> Value {
    serde_json::from_slice(&output.stdout).expect("stdout is JSON")
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("no signal")
}

#[test]
fn plan_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let target = write_json(dir.path(), "target.json", &target_json(&[0, 1, 2, 3]));
    let plan_path = dir.path().join("plan.json");

    let plan = reeb()
        .args(["plan"])
        .arg(&target)
        .arg("-o")
        .arg(&plan_path)
        .output()
        .unwrap();
    assert_eq!(exit_code(&plan), 0);
    let plan_value: Value =
        serde_json::from_str(&std::fs::read_to_string(&plan_path).unwrap()).unwrap();
    assert_eq!(plan_value["operations"].as_array().unwrap().len(), 3);

    let verify = reeb()
        .arg("verify")
        .arg(&plan_path)
        .arg(&target)
        .output()
        .unwrap();
    assert_eq!(exit_code(&verify), 0);
    assert_eq!(stdout_json(&verify)["verified"], true);
}

#[test]
fn plan_strategies_differ() {
    let dir = tempfile::tempdir().unwrap();
    // Budget fails (2+3 > 4) but the staircase holds, so peel works and
    // prop3 does not.
    let target = write_json(dir.path(), "target.json", &target_json(&[0, 2, 3, 4]));
    let peel = reeb()
        .arg("plan")
        .arg(&target)
        .args(["--strategy", "peel"])
        .output()
        .unwrap();
    assert_eq!(exit_code(&peel), 0);
    let prop3 = reeb()
        .arg("plan")
        .arg(&target)
        .args(["--strategy", "prop3"])
        .output()
        .unwrap();
    assert_eq!(exit_code(&prop3), 1);
}

#[test]
fn infeasible_plan_exits_one_with_report() {
    let dir = tempfile::tempdir().unwrap();
    let target = write_json(dir.path(), "target.json", &target_json(&[0, 2, 1]));
    let output = reeb().arg("plan").arg(&target).output().unwrap();
    assert_eq!(exit_code(&output), 1);
    assert_eq!(stdout_json(&output)["verdict"], "NECESSARY_VIOLATED");
}

#[test]
fn check_reports_checks_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let good = write_json(dir.path(), "good.json", &target_json(&[0, 1, 2]));
    let bad = write_json(dir.path(), "bad.json", &target_json(&[0, 2, 1]));

    let output = reeb().arg("check").arg(&good).output().unwrap();
    assert_eq!(exit_code(&output), 0);
    let report = stdout_json(&output);
    assert_eq!(report["verdict"], "REALIZED");
    assert_eq!(report["checks"]["thm1"], true);
    assert_eq!(report["checks"]["necessary"], true);

    let output = reeb().arg("check").arg(&bad).output().unwrap();
    assert_eq!(exit_code(&output), 1);
    assert_eq!(stdout_json(&output)["checks"]["necessary"], false);

    // Criterion flag keys the exit code to one checker.
    let output = reeb()
        .arg("check")
        .arg(&good)
        .args(["--criterion", "thm1"])
        .output()
        .unwrap();
    assert_eq!(exit_code(&output), 0);
    let gap = write_json(dir.path(), "gap.json", &target_json(&[0, 1, 0, 1]));
    let output = reeb()
        .arg("check")
        .arg(&gap)
        .args(["--criterion", "thm1"])
        .output()
        .unwrap();
    assert_eq!(exit_code(&output), 1);
    let output = reeb()
        .arg("check")
        .arg(&gap)
        .args(["--criterion", "prop3"])
        .output()
        .unwrap();
    assert_eq!(exit_code(&output), 0);
    let output = reeb()
        .arg("check")
        .arg(&gap)
        .args(["--criterion", "remark1"])
        .output()
        .unwrap();
    assert_eq!(exit_code(&output), 1);
    let output = reeb()
        .arg("check")
        .arg(&gap)
        .args(["--criterion", "necessary"])
        .output()
        .unwrap();
    assert_eq!(exit_code(&output), 0);
}

#[test]
fn apply_supports_custom_base_models() {
    let dir = tempfile::tempdir().unwrap();
    let plan = write_json(
        dir.path(),
        "plan.json",
        &json!({
            "n": 2,
            "base": {
                "type": "custom",
                "homology": {
                    "n": 2,
                    "groups": [
                        {"rank": 1, "torsion": []},
                        {"rank": 0, "torsion": [2]},
                        {"rank": 1, "torsion": []},
                    ],
                },
            },
            "operations": [{"dim": 1, "summands": []}],
        }),
    );
    let output = reeb().arg("apply").arg(&plan).output().unwrap();
    assert_eq!(exit_code(&output), 0);
    let model = stdout_json(&output);
    // Base homology keeps its torsion; the circle adds 1 to degrees 1 and 2.
    assert_eq!(model["homology"]["groups"][1]["rank"], 1);
    assert_eq!(model["homology"]["groups"][1]["torsion"][0], 2);
    assert_eq!(model["homology"]["groups"][2]["rank"], 2);
}

#[test]
fn apply_prints_resulting_homology() {
    let dir = tempfile::tempdir().unwrap();
    let plan = write_json(
        dir.path(),
        "plan.json",
        &json!({
            "n": 3,
            "base": {"type": "bouquet", "l": 1},
            "operations": [{"dim": 0, "summands": []}],
        }),
    );
    let output = reeb().arg("apply").arg(&plan).output().unwrap();
    assert_eq!(exit_code(&output), 0);
    let model = stdout_json(&output);
    assert_eq!(model["homology"]["groups"][0]["rank"], 1);
    assert_eq!(model["homology"]["groups"][3]["rank"], 2);
}

#[test]
fn malformed_inputs_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, "{\"n\": 2, \"groups\": [").unwrap();
    let output = reeb().arg("check").arg(&broken).output().unwrap();
    assert_eq!(exit_code(&output), 2);
    assert!(String::from_utf8_lossy(&output.stderr).contains("malformed JSON"));

    // Wrong group count for n.
    let mismatched = write_json(
        dir.path(),
        "mismatched.json",
        &json!({"n": 2, "groups": [{"rank": 0, "torsion": []}]}),
    );
    let output = reeb().arg("check").arg(&mismatched).output().unwrap();
    assert_eq!(exit_code(&output), 2);

    // Missing file.
    let output = reeb()
        .arg("check")
        .arg(dir.path().join("nope.json"))
        .output()
        .unwrap();
    assert_eq!(exit_code(&output), 2);

    // Usage error: no input at all.
    let output = reeb().arg("plan").output().unwrap();
    assert_eq!(exit_code(&output), 2);
}

#[test]
fn verify_dimension_mismatch_is_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let plan = write_json(
        dir.path(),
        "plan.json",
        &json!({"n": 2, "base": {"type": "ball"}, "operations": []}),
    );
    let target = write_json(dir.path(), "target.json", &target_json(&[0, 1]));
    let output = reeb()
        .arg("verify")
        .arg(&plan)
        .arg(&target)
        .output()
        .unwrap();
    assert_eq!(exit_code(&output), 2);
}

#[test]
fn from_function_builds_targets_and_scans() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_json(
        dir.path(),
        "square.json",
        &json!({"kind": "polynomial", "coeffs": ["0", "0", "1"]}),
    );

    let output = reeb()
        .arg("from-function")
        .arg(&spec)
        .args(["--n", "3"])
        .output()
        .unwrap();
    assert_eq!(exit_code(&output), 0);
    let target = stdout_json(&output);
    let ranks: Vec<u64> = target["groups"]
        .as_array()
        .unwrap()
        .iter()
        .map(|g| g["rank"].as_u64().unwrap())
        .collect();
    assert_eq!(ranks, vec![0, 1, 4, 9]);

    let output = reeb()
        .arg("from-function")
        .arg(&spec)
        .args(["--find-min-n", "6"])
        .output()
        .unwrap();
    assert_eq!(exit_code(&output), 0);
    let report = stdout_json(&output);
    assert_eq!(report["min_feasible_n"], 1);
    assert_eq!(report["rows"].as_array().unwrap().len(), 6);

    // Exactly one of --n / --find-min-n.
    let output = reeb().arg("from-function").arg(&spec).output().unwrap();
    assert_eq!(exit_code(&output), 2);
    let output = reeb()
        .arg("from-function")
        .arg(&spec)
        .args(["--n", "2", "--find-min-n", "6"])
        .output()
        .unwrap();
    assert_eq!(exit_code(&output), 2);

    let bad_spec = write_json(
        dir.path(),
        "bad.json",
        &json!({"kind": "polynomial", "coeffs": ["5"]}),
    );
    let output = reeb()
        .arg("from-function")
        .arg(&bad_spec)
        .args(["--n", "3"])
        .output()
        .unwrap();
    assert_eq!(exit_code(&output), 2);
}

#[test]
fn search_realizes_and_refutes() {
    let dir = tempfile::tempdir().unwrap();
    let gap = write_json(dir.path(), "gap.json", &target_json(&[0, 1, 0, 1]));
    let output = reeb().arg("search").arg(&gap).output().unwrap();
    assert_eq!(exit_code(&output), 0);
    let report = stdout_json(&output);
    assert_eq!(report["outcome"], "REALIZED");
    assert_eq!(report["plan"]["operations"][0]["dim"], 2);

    let drop = write_json(dir.path(), "drop.json", &target_json(&[0, 2, 1]));
    let output = reeb().arg("search").arg(&drop).output().unwrap();
    assert_eq!(exit_code(&output), 1);
    assert_eq!(stdout_json(&output)["outcome"], "INFEASIBLE_WITHIN_BOUNDS");

    // Out-of-bounds target dimension is an input error.
    let big = write_json(dir.path(), "big.json", &target_json(&[0, 0, 0, 0, 0, 1]));
    let output = reeb()
        .arg("search")
        .arg(&big)
        .args(["--max-n", "4"])
        .output()
        .unwrap();
    assert_eq!(exit_code(&output), 2);
}

#[test]
fn output_bytes_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let target = write_json(dir.path(), "target.json", &target_json(&[0, 1, 2, 3]));
    let a = reeb().arg("check").arg(&target).output().unwrap();
    let b = reeb().arg("check").arg(&target).output().unwrap();
    assert_eq!(a.stdout, b.stdout);
}

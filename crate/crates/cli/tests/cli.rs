use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn mxr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mxr"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = mxr(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("one JSON record")
}

#[test]
fn omega_of_one() {
    let rec = json(&["omega", "--m", "5", "--r", "1", "--x", "1"]);
    assert_eq!(rec["results"][0]["value"], "-52/31");
    assert_eq!(rec["status"], "exact");
    assert_eq!(rec["params"]["m"], 5);
    assert_eq!(rec["command"], "omega --m 5 --r 1 --x 1");
}

#[test]
fn q_shift_map_is_identity() {
    let rec = json(&["q", "--m", "1", "--r", "-1", "--x", "13", "--k", "4"]);
    assert_eq!(rec["results"][0]["residue"], "13");
    assert_eq!(rec["results"][0]["precision"], 4);
    assert_eq!(rec["status"], "truncated");
}

#[test]
fn even_denominator_exits_3() {
    let out = mxr(&["omega", "--m", "5", "--r", "1", "--x", "1/2"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not a 2-adic integer"));
    assert!(out.stdout.is_empty());
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["omega", "--x", "1.5"][..],
        &["omega", "--x", "abc"],
        &["frobnicate"],
        &["omega"],
        &["omega-k", "--x", "1"],
        &["q", "--x", "1", "--format", "yaml"],
        &["omega", "--x", "3/0"],
    ] {
        assert_eq!(mxr(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn preconditions_exit_3() {
    for args in [
        &["q", "--m", "4", "--x", "1"][..],
        &["qbar", "--k", "25"],
        &["q", "--x", "1", "--k", "0"],
        &["scan-pairs", "--k", "64", "--bound", "2^60"],
    ] {
        assert_eq!(mxr(args).status.code(), Some(3), "{args:?}");
    }
}

#[test]
fn negative_inputs_parse() {
    let rec = json(&["omega-hat", "--m", "5", "--x", "-14/17"]);
    assert_eq!(rec["status"], "diverged");
    let rec = json(&["phi", "--m", "5", "--x", "-6/7"]);
    assert_eq!(rec["results"][0]["value"], "-14/17");
    let rec = json(&["omega", "--m", "1", "--r", "-3", "--x", "10"]);
    assert_eq!(rec["results"][0]["value"], "-13");
}

#[test]
fn rationals_are_strings() {
    fn walk(v: &Value, key: &str) {
        match v {
            Value::Object(m) => m.iter().for_each(|(k, v)| walk(v, k)),
            Value::Array(a) => a.iter().for_each(|v| walk(v, key)),
            Value::Number(n) => assert!(n.is_i64() || n.is_u64(), "float under {key}: {n}"),
            _ => {}
        }
    }
    for args in [
        &["omega-hat", "--m", "5", "--x", "7"][..],
        &["table1"],
        &["nu", "--m", "5", "--x", "7"],
        &["omega-k", "--m", "5", "--x", "0", "--k", "3"],
    ] {
        walk(&json(args), "");
    }
}

#[test]
fn record_fields_match_schema() {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../schema/output_record.schema.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let allowed = schema["properties"].as_object().unwrap();
    let required: Vec<&str> = schema["required"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap())
        .collect();
    let statuses = schema["properties"]["status"]["enum"].as_array().unwrap();
    for args in [
        &["orbit", "--m", "5", "--x", "5"][..],
        &["q", "--m", "5", "--x", "1/3"],
        &["omega", "--m", "5", "--x", "7"],
        &["qbar", "--k", "3"],
        &["scan-hat", "--m", "5", "--x", "1,-14/17"],
        &["identities", "--budget", "10"],
    ] {
        let rec = json(args);
        let obj = rec.as_object().unwrap();
        for key in obj.keys() {
            assert!(allowed.contains_key(key), "{key} not in schema");
        }
        for key in &required {
            assert!(obj.contains_key(*key), "{args:?} lacks {key}");
        }
        assert!(statuses.contains(&rec["status"]), "{}", rec["status"]);
    }
}

#[test]
fn deterministic_output() {
    let args = ["scan-pairs", "--m", "5", "--budget", "30", "--seed", "4", "--k", "96"];
    assert_eq!(mxr(&args).stdout, mxr(&args).stdout);
    let args = ["identities", "--m", "7", "--budget", "50", "--seed", "9", "--format", "csv"];
    assert_eq!(mxr(&args).stdout, mxr(&args).stdout);
}

#[test]
fn csv_and_text_formats() {
    let out = mxr(&["orbit", "--m", "5", "--x", "1", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "command,m,r,status,index,parity,state");
    assert_eq!(lines.len(), 6);
    assert!(lines[3].ends_with(",2,0,8"));

    let out = mxr(&["table1", "--format", "text"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("-160532/78125"));
    assert!(text.contains("2^2(1 + 2^1 + 2^5 + ...)"));
    assert!(text.contains("-1.129... x 10^4"));
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rec.json");
    let out = mxr(&["omega", "--m", "5", "--x", "3", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let rec: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(rec["results"][0]["value"], "-26/31");
}

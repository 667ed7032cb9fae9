#![allow(dead_code)]

use std::process::{Command, Output};

use serde_json::Value;

pub fn p6verify(args: &[&str], threads: Option<usize>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_p6verify"));
    cmd.args(args);
    if let Some(n) = threads {
        cmd.env("RAYON_NUM_THREADS", n.to_string());
    }
    cmd.output().expect("p6verify runs")
}

pub fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

pub fn schema_errors(report: &str) -> Vec<String> {
    let schema: Value = serde_json::from_str(include_str!("../../schema/report.schema.json")).unwrap();
    let validator = jsonschema::validator_for(&schema).expect("schema compiles");
    let doc: Value = match serde_json::from_str(report) {
        Ok(v) => v,
        Err(e) => return vec![format!("not JSON: {e}")],
    };
    validator.iter_errors(&doc).map(|e| format!("{} at {}", e, e.instance_path())).collect()
}

/// Checks `summary` against `results` and that indices run `0..n`.
pub fn summary_consistent(report: &str) -> bool {
    let doc: Value = serde_json::from_str(report).unwrap();
    let rows = doc["results"].as_array().unwrap();
    let passes = rows.iter().filter(|r| r["pass"] == Value::Bool(true)).count() as u64;
    let max = rows
        .iter()
        .filter_map(|r| r["residual"].as_f64())
        .fold(None, |m: Option<f64>, v| Some(m.map_or(v, |m| m.max(v))));
    rows.iter().enumerate().all(|(i, r)| r["index"].as_u64() == Some(i as u64))
        && doc["summary"]["pass_count"].as_u64() == Some(passes)
        && doc["summary"]["fail_count"].as_u64() == Some(rows.len() as u64 - passes)
        && doc["summary"]["max_residual"].as_f64() == max
}

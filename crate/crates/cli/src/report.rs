//! The report document: summary, result, expectations and digests.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::pipelines::{Outcome, Summary};
use crate::scenario::{sha256_hex, Loaded};

pub const SCHEMA: &str = "modlie-report/1";

#[derive(Debug, Clone)]
pub struct Mismatch {
    pub key: String,
    pub expected: Value,
    pub actual: Option<Value>,
}

fn flatten(prefix: &str, t: &toml::Table, out: &mut BTreeMap<String, Value>) {
    for (k, v) in t {
        let key = if prefix.is_empty() {
            k.clone()
        } else {
            format!("{}.{}", prefix, k)
        };
        match v {
            toml::Value::Table(inner) => flatten(&key, inner, out),
            other => {
                out.insert(key, serde_json::to_value(other).expect("toml values are JSON values"));
            }
        }
    }
}

/// Compare the expected block (dotted keys, nested tables allowed) against
/// the summary.
pub fn check_expected(expected: Option<&toml::Table>, summary: &Summary) -> Vec<Mismatch> {
    let Some(t) = expected else {
        return Vec::new();
    };
    let mut flat = BTreeMap::new();
    flatten("", t, &mut flat);
    flat.into_iter()
        .filter_map(|(key, want)| {
            let got = summary.get(&key);
            (got != Some(&want)).then(|| Mismatch {
                key,
                expected: want,
                actual: got.cloned(),
            })
        })
        .collect()
}

/// Assemble the report. Everything in it is a function of the inputs; the
/// `digest` is the SHA-256 of the document without the digest field.
pub fn build(l: &Loaded, outcome: &Outcome, mismatches: &[Mismatch]) -> Value {
    let inputs: Vec<Value> = l
        .inputs()
        .iter()
        .map(|i| json!({ "path": i.path, "sha256": i.sha256 }))
        .collect();
    let checked = l.scenario.expected.as_ref().map_or(0, |t| {
        let mut flat = BTreeMap::new();
        flatten("", t, &mut flat);
        flat.len()
    });
    let mut doc = json!({
        "schema": SCHEMA,
        "toolkit": { "name": "modlie", "version": env!("CARGO_PKG_VERSION") },
        "scenario": {
            "name": l.scenario.name,
            "pipeline": l.scenario.pipeline.name(),
            "sha256": l.source_sha256,
        },
        "inputs": inputs,
        "summary": outcome.summary,
        "result": outcome.result,
        "expectations": {
            "checked": checked,
            "mismatches": mismatches.iter().map(|m| json!({
                "key": m.key,
                "expected": m.expected,
                "actual": m.actual,
            })).collect::<Vec<_>>(),
        },
    });
    let digest = sha256_hex(&serde_json::to_vec(&doc).expect("serializable"));
    doc["digest"] = json!(digest);
    doc
}

pub fn to_json(report: &Value) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("serializable");
    s.push('\n');
    s
}

fn show(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn render_text(report: &Value) -> String {
    let mut out = String::new();
    let sc = &report["scenario"];
    let _ = writeln!(out, "scenario {} ({})", show(&sc["name"]), show(&sc["pipeline"]));
    if let Some(summary) = report["summary"].as_object() {
        for (k, v) in summary {
            let _ = writeln!(out, "  {} = {}", k, show(v));
        }
    }
    let exp = &report["expectations"];
    let mismatches = exp["mismatches"].as_array().cloned().unwrap_or_default();
    if exp["checked"].as_u64().unwrap_or(0) > 0 {
        if mismatches.is_empty() {
            let _ = writeln!(out, "expectations: {} checked, all match", exp["checked"]);
        } else {
            let _ = writeln!(out, "expectations: {} of {} differ", mismatches.len(), exp["checked"]);
            for m in &mismatches {
                let actual = if m["actual"].is_null() {
                    "missing".to_string()
                } else {
                    show(&m["actual"])
                };
                let _ = writeln!(out, "  - {}: expected {}, got {}", show(&m["key"]), show(&m["expected"]), actual);
            }
        }
    }
    let _ = writeln!(out, "digest {}", show(&report["digest"]));
    out
}

pub fn render_summary(summary: &Summary) -> String {
    let mut out = String::new();
    for (k, v) in summary {
        let _ = writeln!(out, "{} = {}", k, show(v));
    }
    out
}

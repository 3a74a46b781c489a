//! Report envelope: manifest, result, timing.

use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;
use serde_json::{json, Value};

pub const FORMAT_VERSION: u32 = 1;

/// Everything needed to re-run a command. Replaying `argv` reproduces the
/// `result` section of the report exactly.
#[derive(Clone, Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub argv: Vec<String>,
    pub config: Value,
    pub format_version: u32,
    pub tool_version: &'static str,
    pub seeds: Vec<u64>,
    pub threads: usize,
    /// Seconds since the Unix epoch at start-up.
    pub started_at: u64,
}

impl RunManifest {
    pub fn new(command: &str, argv: &[String], config: Value, threads: usize) -> Self {
        RunManifest {
            command: command.to_string(),
            argv: argv.to_vec(),
            config,
            format_version: FORMAT_VERSION,
            tool_version: env!("CARGO_PKG_VERSION"),
            seeds: Vec::new(),
            threads,
            started_at: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map_or(0, |d| d.as_secs()),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub manifest: RunManifest,
    /// `ok` or `violation`.
    pub status: &'static str,
    pub result: Value,
    /// Wall-clock figures; excluded from replay comparison.
    pub timing: Value,
}

impl Report {
    pub fn new(
        manifest: RunManifest,
        status: &'static str,
        result: Value,
        elapsed_ms: f64,
        extra_timing: Value,
    ) -> Self {
        let mut timing = json!({ "wall_clock_ms": elapsed_ms });
        if let (Some(t), Value::Object(extra)) = (timing.as_object_mut(), extra_timing) {
            t.extend(extra);
        }
        Report {
            manifest,
            status,
            result,
            timing,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// `path = value` lines; numeric arrays stay on one line.
    pub fn to_text(&self) -> String {
        let v = serde_json::to_value(self).expect("report serializes");
        let mut out = String::new();
        flatten("", &v, &mut out);
        out
    }
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn flatten(prefix: &str, v: &Value, out: &mut String) {
    let key = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(map) => {
            for (k, child) in map {
                flatten(&key(k), child, out);
            }
        }
        Value::Array(items) if items.iter().all(is_scalar) => {
            out.push_str(&format!("{prefix} = {v}\n"));
        }
        Value::Array(items) => {
            for (i, child) in items.iter().enumerate() {
                flatten(&key(&i.to_string()), child, out);
            }
        }
        Value::String(s) if s.contains('\n') => {
            out.push_str(&format!("{prefix} = |\n"));
            for line in s.lines() {
                out.push_str(&format!("    {line}\n"));
            }
        }
        Value::String(s) => out.push_str(&format!("{prefix} = {s}\n")),
        _ => out.push_str(&format!("{prefix} = {v}\n")),
    }
}

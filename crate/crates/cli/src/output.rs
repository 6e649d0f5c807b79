use std::io::Write;
use std::path::Path;

use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

/// What a subcommand produces: the JSON result, the same data as rows for
/// CSV output, and any theorem violations found.
pub struct Outcome {
    pub result: Value,
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    pub violations: Vec<Value>,
}

impl Outcome {
    pub fn new(result: Value, headers: Vec<&'static str>, rows: Vec<Vec<String>>) -> Self {
        Outcome {
            result,
            headers,
            rows,
            violations: Vec::new(),
        }
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// JSON integer when it fits in an `i64`, decimal string otherwise.
pub fn big(v: &BigInt) -> Value {
    match i64::try_from(v) {
        Ok(x) => json!(x),
        Err(_) => json!(v.to_string()),
    }
}

/// Wraps `outcome` with the run metadata and writes it to `out` or stdout.
pub fn emit(
    command: &str,
    config: Value,
    input_sha256: &str,
    outcome: &Outcome,
    format: Format,
    out: Option<&Path>,
) -> std::io::Result<()> {
    let bytes = match format {
        Format::Json => {
            let mut doc = json!({
                "tool": "dynatomic",
                "version": env!("CARGO_PKG_VERSION"),
                "command": command,
                "config": config,
                "input_sha256": input_sha256,
                "result": outcome.result,
            });
            if !outcome.violations.is_empty() {
                doc["violations"] = Value::Array(outcome.violations.clone());
            }
            let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
            s.push('\n');
            s.into_bytes()
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&outcome.headers).map_err(std::io::Error::other)?;
            for row in &outcome.rows {
                w.write_record(row).map_err(std::io::Error::other)?;
            }
            let body = w.into_inner().map_err(|e| std::io::Error::other(e.to_string()))?;
            let mut s = format!(
                "# dynatomic {} {command} input_sha256={input_sha256} config={}\n",
                env!("CARGO_PKG_VERSION"),
                config
            )
            .into_bytes();
            s.extend(body);
            s
        }
    };
    match out {
        Some(path) => std::fs::write(path, bytes),
        None => std::io::stdout().write_all(&bytes),
    }
}

//! Output formats. Every path is deterministic: fixed key order (serde_json
//! maps are sorted), reals rounded to 12 significant digits, LF line endings.

use anyhow::Result;
use mangoldt_core::numeric::{format_real, round_sig12};
use mangoldt_core::Value;
use serde_json::{json, Map};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Plain,
}

/// Exact values become strings (`"4/3"`), reals become numbers.
pub fn json_value(v: &Value) -> serde_json::Value {
    match v {
        Value::Exact(_) => json!(v.to_string()),
        Value::Real(x) => json!(round_sig12(*x)),
    }
}

pub fn real(x: f64) -> String {
    format_real(x)
}

/// Wraps `body` (an object) in the `{"version": 1, ...}` envelope.
pub fn envelope(command: &str, body: serde_json::Value) -> Result<String> {
    let mut map = Map::new();
    map.insert("version".into(), json!(1));
    map.insert("command".into(), json!(command));
    if let serde_json::Value::Object(fields) = body {
        map.extend(fields);
    }
    let mut out = serde_json::to_string_pretty(&serde_json::Value::Object(map))?;
    out.push('\n');
    Ok(out)
}

pub fn csv<S: AsRef<str>>(header: &[S], rows: &[Vec<String>]) -> Result<String> {
    let mut w = ::csv::WriterBuilder::new()
        .terminator(::csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(header.iter().map(|h| h.as_ref()))?;
    for row in rows {
        w.write_record(row)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

use std::time::Duration;

use clap::ValueEnum;
use num_bigint::BigInt;
use serde_json::{json, Map, Value};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

/// Integers go out as decimal strings so no consumer rounds them.
pub fn int(v: impl ToString) -> Value {
    Value::String(v.to_string())
}

pub fn ints(values: &[BigInt]) -> Value {
    Value::Array(values.iter().map(int).collect())
}

/// The JSON document every command emits under `--format json`.
///
/// Keys are serialized in sorted order (serde_json's default map), so a
/// parse/re-serialize round trip reproduces the same bytes.
pub struct Envelope {
    pub command: String,
    pub theory: Option<String>,
    pub p: Value,
    pub offset: Option<usize>,
    pub payload: Value,
    pub elapsed: Duration,
}

impl Envelope {
    pub fn to_value(&self) -> Value {
        let mut m = Map::new();
        m.insert(
            "version".into(),
            Value::String(env!("CARGO_PKG_VERSION").into()),
        );
        m.insert("command".into(), Value::String(self.command.clone()));
        m.insert(
            "theory".into(),
            self.theory.clone().map_or(Value::Null, Value::String),
        );
        m.insert("p".into(), self.p.clone());
        m.insert("offset".into(), self.offset.map_or(Value::Null, int));
        m.insert("payload".into(), self.payload.clone());
        m.insert(
            "timing".into(),
            json!({ "elapsed_us": int(self.elapsed.as_micros()) }),
        );
        Value::Object(m)
    }

    pub fn render(&self) -> String {
        let mut s =
            serde_json::to_string_pretty(&self.to_value()).expect("values always serialize");
        s.push('\n');
        s
    }
}

/// `index,exponent,coefficient` rows for a coefficient list starting at `offset`.
pub fn coefficient_csv(values: &[BigInt], offset: usize) -> String {
    let mut out = String::from("index,exponent,coefficient\n");
    for (i, c) in values.iter().enumerate() {
        out.push_str(&format!("{i},{},{c}\n", offset + i));
    }
    out
}

/// Comma-quotes a field only when it needs it.
pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn joined(values: &[BigInt]) -> String {
    values
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

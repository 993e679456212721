//! Report envelope shared by all commands, and its json/text/csv renderings.
//!
//! Output is a pure function of the inputs: maps are ordered, big integers are
//! decimal strings, and nothing time-dependent is recorded.

use std::collections::BTreeMap;
use std::fmt::Display;

use num_bigint::BigUint;
use serde::{Serialize, Serializer};
use serde_json::Value;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

pub(crate) fn ser_biguints<S: Serializer>(values: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(values.iter().map(|v| v.to_string()))
}

pub(crate) fn ser_display<T: Display, S: Serializer>(value: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(value)
}

pub(crate) fn ser_display_vec<T: Display, S: Serializer>(values: &[T], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(values.iter().map(|v| v.to_string()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Text,
    Csv,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub tool_version: String,
    pub params: BTreeMap<String, Value>,
    /// Budgets, truncations and other knobs the result depends on.
    pub constants: BTreeMap<String, Value>,
    pub result: Value,
    /// Named pass/fail checks; `pass` is their conjunction.
    pub checks: BTreeMap<String, bool>,
    pub pass: bool,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            tool_version: TOOL_VERSION.to_string(),
            params: BTreeMap::new(),
            constants: BTreeMap::new(),
            result: Value::Null,
            checks: BTreeMap::new(),
            pass: true,
        }
    }

    pub fn param(mut self, key: &str, value: impl Serialize) -> Self {
        self.params.insert(key.to_string(), to_value(value));
        self
    }

    pub fn constant(mut self, key: &str, value: impl Serialize) -> Self {
        self.constants.insert(key.to_string(), to_value(value));
        self
    }

    pub fn result(mut self, value: impl Serialize) -> Self {
        self.result = to_value(value);
        self
    }

    pub fn check(mut self, name: &str, ok: bool) -> Self {
        self.checks.insert(name.to_string(), ok);
        self.pass = self.checks.values().all(|&b| b);
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Text => flatten(&to_value(self))
                .into_iter()
                .map(|(k, v)| format!("{k} = {v}\n"))
                .collect(),
            Format::Csv => {
                let mut s = String::from("key,value\n");
                for (k, v) in flatten(&to_value(self)) {
                    s.push_str(&csv_field(&k));
                    s.push(',');
                    s.push_str(&csv_field(&v));
                    s.push('\n');
                }
                s
            }
        }
    }
}

fn to_value(value: impl Serialize) -> Value {
    serde_json::to_value(value).expect("value serializes")
}

/// Dotted-path leaves of a JSON value in document order.
pub fn flatten(value: &Value) -> Vec<(String, String)> {
    fn walk(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
        let join = |k: &str| {
            if prefix.is_empty() {
                k.to_string()
            } else {
                format!("{prefix}.{k}")
            }
        };
        match v {
            Value::Object(map) if !map.is_empty() => {
                for (k, v) in map {
                    walk(&join(k), v, out);
                }
            }
            Value::Array(items) if !items.is_empty() => {
                for (i, v) in items.iter().enumerate() {
                    walk(&join(&i.to_string()), v, out);
                }
            }
            Value::String(s) => out.push((prefix.to_string(), s.clone())),
            other => out.push((prefix.to_string(), other.to_string())),
        }
    }
    let mut out = Vec::new();
    walk("", value, &mut out);
    out
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn pass_is_conjunction() {
        let r = Report::new("x").check("a", true);
        assert!(r.pass);
        let r = r.check("b", false).check("c", true);
        assert!(!r.pass);
    }

    #[test]
    fn renderings() {
        let r = Report::new("demo")
            .param("n", 3)
            .result(json!({"counts": ["1", "27"], "note": "a,b"}))
            .check("ok", true);
        let text = r.render(Format::Text);
        assert!(text.contains("params.n = 3\n"));
        assert!(text.contains("result.counts.1 = 27\n"));
        let csv = r.render(Format::Csv);
        assert!(csv.starts_with("key,value\n"));
        assert!(csv.contains("result.note,\"a,b\"\n"));
        let parsed: Value = serde_json::from_str(&r.render(Format::Json)).unwrap();
        assert_eq!(parsed["pass"], json!(true));
        assert_eq!(parsed["tool_version"], json!(TOOL_VERSION));
    }

    #[test]
    fn flatten_empty_containers() {
        let flat = flatten(&json!({"a": [], "b": {}}));
        assert_eq!(flat, vec![("a".into(), "[]".into()), ("b".into(), "{}".into())]);
    }
}

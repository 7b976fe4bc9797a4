//! Structured report emission shared by every subcommand.
//!
//! A report carries the command echo, the parameters actually used, the
//! result payload, and any caveats. Both output modes render the same
//! payload with a fixed field order, so two runs with identical arguments
//! differ at most in the timing line.

use clap::ValueEnum;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

pub struct Report {
    pub command: &'static str,
    pub parameters: Value,
    pub result: Value,
    pub caveats: Vec<String>,
}

impl Report {
    pub fn emit(&self, format: Format, timing_ms: u128) -> String {
        match format {
            Format::Json => {
                let mut top = Map::new();
                top.insert("command".into(), Value::String(self.command.into()));
                top.insert("parameters".into(), self.parameters.clone());
                top.insert("result".into(), self.result.clone());
                top.insert(
                    "caveats".into(),
                    Value::Array(
                        self.caveats
                            .iter()
                            .map(|c| Value::String(c.clone()))
                            .collect(),
                    ),
                );
                top.insert("timing_ms".into(), Value::from(timing_ms as u64));
                serde_json::to_string_pretty(&Value::Object(top)).expect("report serialization")
            }
            Format::Text => {
                let mut out = String::new();
                line(&mut out, 0, &format!("command: {}", self.command));
                write_entry(&mut out, "parameters", &self.parameters, 0);
                write_entry(&mut out, "result", &self.result, 0);
                if self.caveats.is_empty() {
                    line(&mut out, 0, "caveats: []");
                } else {
                    line(&mut out, 0, "caveats:");
                    for c in &self.caveats {
                        line(&mut out, 2, &format!("- {c}"));
                    }
                }
                out.push_str(&format!("timing_ms: {timing_ms}"));
                out
            }
        }
    }
}

/// Ordered object literal; insertion order is preserved in both modes.
pub fn obj(entries: Vec<(&'static str, Value)>) -> Value {
    let mut m = Map::new();
    for (k, v) in entries {
        m.insert(k.to_string(), v);
    }
    Value::Object(m)
}

/// String leaf from anything displayable, the common case for exact values.
pub fn leaf(x: impl ToString) -> Value {
    Value::String(x.to_string())
}

fn line(out: &mut String, indent: usize, content: &str) {
    out.push_str(&" ".repeat(indent));
    out.push_str(content);
    out.push('\n');
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("none".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

fn write_entry(out: &mut String, key: &str, val: &Value, indent: usize) {
    if let Some(s) = scalar(val) {
        line(out, indent, &format!("{key}: {s}"));
        return;
    }
    match val {
        Value::Array(items) if items.is_empty() => line(out, indent, &format!("{key}: []")),
        Value::Object(m) if m.is_empty() => line(out, indent, &format!("{key}: {{}}")),
        _ => {
            line(out, indent, &format!("{key}:"));
            write_value(out, val, indent + 2);
        }
    }
}

fn write_value(out: &mut String, v: &Value, indent: usize) {
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                write_entry(out, k, val, indent);
            }
        }
        Value::Array(items) => {
            for item in items {
                if let Some(s) = scalar(item) {
                    line(out, indent, &format!("- {s}"));
                } else {
                    let mut tmp = String::new();
                    write_value(&mut tmp, item, indent + 2);
                    splice_dash(out, &tmp, indent);
                }
            }
        }
        other => {
            let s = scalar(other).unwrap_or_default();
            line(out, indent, &s);
        }
    }
}

/// Turns a block rendered at `indent + 2` into a list item: the first line
/// gets a `- ` marker at `indent`, later lines keep their alignment.
fn splice_dash(out: &mut String, rendered: &str, indent: usize) {
    for (i, l) in rendered.lines().enumerate() {
        if i == 0 {
            line(out, indent, &format!("- {}", l.trim_start()));
        } else {
            out.push_str(l);
            out.push('\n');
        }
    }
}

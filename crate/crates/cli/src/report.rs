//! JSON reports with exact rationals and decimal annotations, plus the text
//! and CSV renderings.

use parhiggs_core::{rational, Rational};
use serde_json::{Map, Value};

/// An output object. Rationals are stored as exact `"p/q"` strings; their
/// rounded values go to a `decimal` sub-object under the same key.
pub struct Report {
    places: usize,
    fields: Map<String, Value>,
    decimal: Map<String, Value>,
}

impl Report {
    pub fn new(places: usize) -> Self {
        Report { places, fields: Map::new(), decimal: Map::new() }
    }

    pub fn child(&self) -> Self {
        Report::new(self.places)
    }

    pub fn rational(&mut self, key: &str, x: &Rational) -> &mut Self {
        self.fields.insert(key.into(), Value::String(x.to_string()));
        self.decimal.insert(key.into(), Value::String(rational::to_decimal(x, self.places)));
        self
    }

    pub fn opt_rational(&mut self, key: &str, x: Option<&Rational>) -> &mut Self {
        match x {
            Some(x) => self.rational(key, x),
            None => self.set(key, Value::Null),
        }
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.fields.insert(key.into(), value.into());
        self
    }

    pub fn into_value(self) -> Value {
        let mut fields = self.fields;
        if !self.decimal.is_empty() {
            fields.insert("decimal".into(), Value::Object(self.decimal));
        }
        Value::Object(fields)
    }
}

/// Exact strings for a list of rationals.
pub fn exact_list<'a>(xs: impl IntoIterator<Item = &'a Rational>) -> Value {
    Value::Array(xs.into_iter().map(|x| Value::String(x.to_string())).collect())
}

pub fn to_json(value: &Value) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("reports are plain JSON values");
    out.push('\n');
    out
}

/// Indented `key: value` lines.
pub fn to_text(value: &Value) -> String {
    let mut out = String::new();
    write_text(value, 0, &mut out);
    out
}

fn scalar(value: &Value) -> Option<String> {
    match value {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.iter().all(|v| !v.is_object() && !v.is_array()) => {
            Some(format!("[{}]", items.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")))
        }
        Value::Array(items) if items.iter().all(Value::is_array) => {
            Some(items.iter().filter_map(scalar).collect::<Vec<_>>().join(" "))
        }
        _ => None,
    }
}

fn write_text(value: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match value {
        Value::Object(map) => {
            for (key, v) in map {
                if key == "grid" {
                    out.push_str(&format!("{pad}{key}:\n"));
                    for row in v.as_array().into_iter().flatten().filter_map(Value::as_str) {
                        out.push_str(&format!("{pad}  {row}\n"));
                    }
                    continue;
                }
                match scalar(v) {
                    Some(s) => out.push_str(&format!("{pad}{key}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{key}:\n"));
                        write_text(v, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                out.push_str(&format!("{pad}-\n"));
                write_text(item, indent + 1, out);
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}

/// CSV from a header and rows.
pub fn csv(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("records are UTF-8")
}

/// `key,value` rows with dotted paths for nested fields.
pub fn flat_csv(value: &Value) -> String {
    let mut rows = Vec::new();
    flatten(value, String::new(), &mut rows);
    csv(&["key", "value"], rows)
}

fn flatten(value: &Value, path: String, rows: &mut Vec<Vec<String>>) {
    let join = |key: &str| if path.is_empty() { key.to_string() } else { format!("{path}.{key}") };
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                flatten(v, join(k), rows);
            }
        }
        Value::Array(items) if items.iter().any(Value::is_object) => {
            for (i, v) in items.iter().enumerate() {
                flatten(v, join(&i.to_string()), rows);
            }
        }
        other => rows.push(vec![path, scalar(other).unwrap_or_default()]),
    }
}

//! Structured output documents.
//!
//! Every structured invocation prints one document:
//!
//! ```json
//! {"schema_version": "1.0", "command": "...", "inputs": {...},
//!  "results": {...}, "notes": [...]}
//! ```
//!
//! Keys are emitted in sorted order. Non-finite numbers never appear: a
//! quantity that is undefined is written as `null` and explained in
//! `notes`. The schema lives in `schema/output.schema.json`.

use serde_json::{Map, Value};

pub const SCHEMA_VERSION: &str = "1.0";

#[derive(Debug, Clone, PartialEq)]
pub struct Document {
    command: String,
    inputs: Map<String, Value>,
    results: Map<String, Value>,
    notes: Vec<String>,
}

/// `null` for NaN and infinities.
pub fn num(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

impl Document {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_owned(),
            inputs: Map::new(),
            results: Map::new(),
            notes: Vec::new(),
        }
    }

    pub fn input(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.inputs.insert(key.to_owned(), value.into());
        self
    }

    pub fn result(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.results.insert(key.to_owned(), value.into());
        self
    }

    pub fn note(&mut self, text: impl Into<String>) -> &mut Self {
        self.notes.push(text.into());
        self
    }

    pub fn results(&self) -> &Map<String, Value> {
        &self.results
    }

    pub fn to_value(&self) -> Value {
        let mut doc = Map::new();
        doc.insert("schema_version".into(), SCHEMA_VERSION.into());
        doc.insert("command".into(), self.command.clone().into());
        doc.insert("inputs".into(), Value::Object(self.inputs.clone()));
        doc.insert("results".into(), Value::Object(self.results.clone()));
        doc.insert(
            "notes".into(),
            Value::Array(self.notes.iter().cloned().map(Value::String).collect()),
        );
        Value::Object(doc)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("serializable");
        s.push('\n');
        s
    }

    /// `section,key,value` rows with nested keys joined by dots.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("section,key,value\n");
        let mut row = |section: &str, key: &str, value: &Value| {
            let cell = match value {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            out.push_str(&format!("{section},{},{}\n", csv_escape(key), csv_escape(&cell)));
        };
        row("meta", "schema_version", &SCHEMA_VERSION.into());
        row("meta", "command", &self.command.clone().into());
        for (section, map) in [("inputs", &self.inputs), ("results", &self.results)] {
            let mut flat = Vec::new();
            flatten("", &Value::Object(map.clone()), &mut flat);
            for (key, value) in &flat {
                row(section, key, value);
            }
        }
        for (i, note) in self.notes.iter().enumerate() {
            row("notes", &i.to_string(), &note.clone().into());
        }
        out
    }
}

fn flatten(prefix: &str, value: &Value, out: &mut Vec<(String, Value)>) {
    let join = |k: &str| {
        if prefix.is_empty() {
            k.to_owned()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                flatten(&join(k), v, out);
            }
        }
        Value::Array(items) if items.iter().any(|v| v.is_object() || v.is_array()) => {
            for (i, v) in items.iter().enumerate() {
                flatten(&join(&i.to_string()), v, out);
            }
        }
        other => out.push((prefix.to_owned(), other.clone())),
    }
}

fn csv_escape(cell: &str) -> String {
    if cell.contains([',', '"', '\n']) {
        format!("\"{}\"", cell.replace('"', "\"\""))
    } else {
        cell.to_owned()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn non_finite_becomes_null() {
        assert_eq!(num(f64::NAN), Value::Null);
        assert_eq!(num(f64::INFINITY), Value::Null);
        assert_eq!(num(0.25), json!(0.25));
    }

    #[test]
    fn envelope_and_csv() {
        let mut doc = Document::new("exact");
        doc.input("p", 0.5)
            .result("nested", json!({"a": 1, "b": [1.5, 2.5]}))
            .note("hello, world");
        let v = doc.to_value();
        assert_eq!(v["schema_version"], SCHEMA_VERSION);
        assert_eq!(v["results"]["nested"]["a"], 1);
        let csv = doc.to_csv();
        assert!(csv.starts_with("section,key,value\nmeta,schema_version,1.0\nmeta,command,exact\n"));
        assert!(csv.contains("results,nested.a,1\n"));
        assert!(csv.contains("results,nested.b,\"[1.5,2.5]\"\n"));
        assert!(csv.contains("notes,0,\"hello, world\"\n"));
    }
}

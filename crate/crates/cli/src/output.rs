//! Rendering of command results as JSON, CSV or text.

use clap::ValueEnum;
use serde_json::{json, Value};

use addix::{Elt, Subspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

pub enum Output {
    /// A single JSON object.
    Record(Value),
    /// Rows under named columns, with an optional versioned header comment.
    Table {
        header: Option<&'static str>,
        columns: Vec<&'static str>,
        rows: Vec<Vec<Value>>,
    },
}

impl Output {
    pub fn record(v: Value) -> Output {
        Output::Record(v)
    }
}

pub fn codes(elts: &[Elt]) -> Value {
    json!(elts.iter().map(|e| e.code()).collect::<Vec<_>>())
}

/// A subspace as its canonical basis codes.
pub fn subspace_json(u: &Subspace) -> Value {
    codes(u.basis())
}

fn csv_field(v: &Value) -> String {
    let s = match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    };
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s
    }
}

fn text_field(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".to_string(),
        other => other.to_string(),
    }
}

pub fn render(out: &Output, format: Format) -> String {
    let mut s = String::new();
    match (out, format) {
        (Output::Record(v), Format::Json) => s = serde_json::to_string_pretty(v).expect("values serialize"),
        (Output::Record(v), Format::Csv) => {
            s.push_str("key,value\n");
            if let Value::Object(m) = v {
                for (k, v) in m {
                    s.push_str(&format!("{},{}\n", csv_field(&json!(k)), csv_field(v)));
                }
            }
        }
        (Output::Record(v), Format::Text) => {
            if let Value::Object(m) = v {
                for (k, v) in m {
                    s.push_str(&format!("{k}: {}\n", text_field(v)));
                }
            }
        }
        (Output::Table { columns, rows, .. }, Format::Json) => {
            let objs: Vec<Value> = rows
                .iter()
                .map(|r| Value::Object(columns.iter().map(|c| c.to_string()).zip(r.iter().cloned()).collect()))
                .collect();
            s = serde_json::to_string_pretty(&objs).expect("values serialize");
        }
        (Output::Table { header, columns, rows }, Format::Csv) => {
            if let Some(h) = header {
                s.push_str(h);
                s.push('\n');
            }
            s.push_str(&columns.join(","));
            s.push('\n');
            for r in rows {
                let cells: Vec<String> = r.iter().map(csv_field).collect();
                s.push_str(&cells.join(","));
                s.push('\n');
            }
        }
        (Output::Table { columns, rows, .. }, Format::Text) => {
            for r in rows {
                let cells: Vec<String> = columns
                    .iter()
                    .zip(r)
                    .map(|(c, v)| format!("{c}={}", text_field(v)))
                    .collect();
                s.push_str(&cells.join("  "));
                s.push('\n');
            }
        }
    }
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

pub fn emit(out: &Output, format: Format) {
    print!("{}", render(out, format));
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_quoting() {
        assert_eq!(csv_field(&json!("x^2+[3]*x")), "x^2+[3]*x");
        assert_eq!(csv_field(&json!("a,b")), "\"a,b\"");
        assert_eq!(csv_field(&json!([1, 2])), "\"[1,2]\"");
        assert_eq!(csv_field(&Value::Null), "");
    }

    #[test]
    fn table_formats() {
        let t = Output::Table {
            header: Some("# test v1"),
            columns: vec!["a", "b"],
            rows: vec![vec![json!(1), json!("x")]],
        };
        assert_eq!(render(&t, Format::Csv), "# test v1\na,b\n1,x\n");
        let v: Value = serde_json::from_str(&render(&t, Format::Json)).unwrap();
        assert_eq!(v, json!([{"a": 1, "b": "x"}]));
    }
}

//! Output rendering: pretty JSON with sorted keys (the serde_json map
//! is ordered), or a flat TSV projection of the same document.

use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Tsv,
}

pub fn render(doc: &Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(doc).expect("documents serialize"),
        Format::Tsv => {
            let mut lines = Vec::new();
            tsv_lines("", doc, &mut lines);
            lines.join("\n")
        }
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("null".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

fn tsv_lines(prefix: &str, v: &Value, out: &mut Vec<String>) {
    let key = |sub: &str| {
        if prefix.is_empty() {
            sub.to_string()
        } else {
            format!("{prefix}.{sub}")
        }
    };
    match v {
        Value::Object(map) => {
            for (k, vv) in map {
                tsv_lines(&key(k), vv, out);
            }
        }
        Value::Array(items) => {
            let scalars: Option<Vec<String>> = items.iter().map(scalar).collect();
            match scalars {
                Some(cells) => out.push(format!("{prefix}\t{}", cells.join("\t"))),
                None => {
                    for (i, item) in items.iter().enumerate() {
                        tsv_lines(&key(&i.to_string()), item, out);
                    }
                }
            }
        }
        other => {
            let cell = scalar(other).expect("scalar value");
            out.push(format!("{prefix}\t{cell}"));
        }
    }
}

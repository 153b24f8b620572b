//! Plain-text rendering of JSON reports.

use serde_json::Value;

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(items) => items.iter().all(is_flat),
        Value::Object(_) => false,
        _ => true,
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => format!("[{}]", items.iter().map(inline).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}

fn write(out: &mut String, v: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                if is_flat(x) {
                    out.push_str(&format!("{pad}{k}: {}\n", inline(x)));
                } else {
                    out.push_str(&format!("{pad}{k}:\n"));
                    write(out, x, indent + 1);
                }
            }
        }
        Value::Array(items) if !is_flat(v) => {
            for x in items {
                if is_flat(x) {
                    out.push_str(&format!("{pad}- {}\n", inline(x)));
                } else {
                    out.push_str(&format!("{pad}-\n"));
                    write(out, x, indent + 1);
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", inline(other))),
    }
}

pub fn to_text(v: &Value) -> String {
    let mut out = String::new();
    write(&mut out, v, 0);
    out
}

//! `--format text`: aligned key/value blocks and tables for humans. JSON stays
//! the only machine contract.

use std::collections::BTreeSet;

use serde_json::Value;

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

/// Compact one-line form of any value, strings unquoted at the top level.
fn cell(v: &Value) -> String {
    match v {
        Value::Array(items) if items.iter().all(is_scalar) => {
            format!("({})", items.iter().map(scalar).collect::<Vec<_>>().join(", "))
        }
        Value::Object(map) => map
            .iter()
            .map(|(k, v)| format!("{k}:{}", cell(v)))
            .collect::<Vec<_>>()
            .join(" "),
        Value::Array(items) => format!("[{}]", items.iter().map(cell).collect::<Vec<_>>().join("; ")),
        _ => scalar(v),
    }
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn table(rows: &[Value], indent: &str, out: &mut String) {
    let keys: Vec<&String> = rows
        .iter()
        .filter_map(Value::as_object)
        .flat_map(|m| m.keys())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let grid: Vec<Vec<String>> = rows
        .iter()
        .map(|r| keys.iter().map(|k| r.get(k.as_str()).map(cell).unwrap_or_default()).collect())
        .collect();
    let widths: Vec<usize> = keys
        .iter()
        .enumerate()
        .map(|(i, k)| grid.iter().map(|row| row[i].chars().count()).chain([k.chars().count()]).max().unwrap())
        .collect();
    let line = |cells: Vec<String>| -> String {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        format!("{indent}{}\n", padded.join("  ").trim_end())
    };
    out.push_str(&line(keys.iter().map(|k| k.to_string()).collect()));
    for row in grid {
        out.push_str(&line(row));
    }
}

fn block(v: &Value, indent: &str, out: &mut String) {
    match v {
        Value::Object(map) => {
            let width = map.keys().map(|k| k.chars().count()).max().unwrap_or(0);
            for (k, val) in map {
                match val {
                    Value::Array(items) if !items.is_empty() && items.iter().all(Value::is_object) => {
                        out.push_str(&format!("{indent}{k}:\n"));
                        table(items, &format!("{indent}  "), out);
                    }
                    Value::Object(inner) if inner.values().any(|x| x.is_object() || x.is_array() && !x.as_array().unwrap().iter().all(is_scalar)) => {
                        out.push_str(&format!("{indent}{k}:\n"));
                        block(val, &format!("{indent}  "), out);
                    }
                    _ => out.push_str(&format!("{indent}{k:<width$}  {}\n", cell(val))),
                }
            }
        }
        Value::Array(items) if !items.is_empty() && items.iter().all(Value::is_object) => {
            table(items, indent, out)
        }
        Value::Array(items) if items.is_empty() => out.push_str(&format!("{indent}(none)\n")),
        other => out.push_str(&format!("{indent}{}\n", cell(other))),
    }
}

/// Renders a report: a header line, then the result.
pub fn render_report(report: &Value) -> String {
    let mut out = format!(
        "{} (parmod {})\n",
        scalar(&report["command"]),
        scalar(&report["toolVersion"])
    );
    block(&report["result"], "", &mut out);
    if let Some(cites) = report["citations"].as_array().filter(|c| !c.is_empty()) {
        out.push_str("citations:\n");
        for c in cites {
            out.push_str(&format!("  {}  {}\n", scalar(&c["ruleId"]), scalar(&c["citation"])));
        }
    }
    out
}

/// Renders any value without a report header.
pub fn render(value: &Value) -> String {
    let mut out = String::new();
    block(value, "", &mut out);
    out
}

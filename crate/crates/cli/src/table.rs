//! Plain-text rendering of JSON reports.

use serde_json::Value;

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn is_grid(v: &Value) -> bool {
    v.as_array()
        .is_some_and(|rows| !rows.is_empty() && rows.iter().all(|r| r.as_array().is_some_and(|c| c.iter().all(|x| !x.is_array() && !x.is_object()))))
}

fn grid(rows: &[Value], indent: &str) -> String {
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| r.as_array().map(|c| c.iter().map(scalar).collect()).unwrap_or_default())
        .collect();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(0);
    cells
        .iter()
        .map(|r| {
            let line: Vec<String> = r.iter().map(|c| format!("{c:>width$}")).collect();
            format!("{indent}{}\n", line.join(" "))
        })
        .collect()
}

fn inline(v: &Value) -> String {
    match v {
        Value::Array(items) => items.iter().map(inline).collect::<Vec<_>>().join(" "),
        Value::Object(map) => map.iter().map(|(k, x)| format!("{k}={}", inline(x))).collect::<Vec<_>>().join(" "),
        other => scalar(other),
    }
}

pub fn render(v: &Value) -> String {
    match v {
        Value::Object(map) => {
            let mut out = String::new();
            for (key, value) in map {
                if is_grid(value) {
                    out.push_str(&format!("{key}:\n"));
                    out.push_str(&grid(value.as_array().expect("grid"), "  "));
                } else if let Some(items) = value.as_array().filter(|a| a.iter().all(Value::is_object)) {
                    out.push_str(&format!("{key}:\n"));
                    for item in items {
                        out.push_str(&format!("  {}\n", inline(item)));
                    }
                } else {
                    out.push_str(&format!("{key}: {}\n", inline(value)));
                }
            }
            out
        }
        other => format!("{}\n", inline(other)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn renders_matrices_as_aligned_grids() {
        let out = render(&json!({"det": "-1", "matrix": [["1", "2"], ["0", "-1"]]}));
        assert_eq!(out, "det: -1\nmatrix:\n   1  2\n   0 -1\n");
    }

    #[test]
    fn renders_lists_inline() {
        assert_eq!(render(&json!({"word": [1, 2, 1]})), "word: 1 2 1\n");
    }
}

use serde_json::Value;

/// Plain-text rendering of a JSON document: scalars bare, objects as
/// `key: value` lines, arrays one item per line.
pub fn text(v: &Value) -> String {
    let mut out = String::new();
    write(v, 0, &mut out);
    out.trim_end().to_string()
}

fn inline(v: &Value) -> Option<String> {
    match v {
        Value::String(s) => Some(s.clone()),
        Value::Null => Some("-".into()),
        Value::Bool(_) | Value::Number(_) => Some(v.to_string()),
        Value::Array(items) if items.iter().all(|i| !i.is_object() && !i.is_array()) => {
            Some(items.iter().filter_map(inline).collect::<Vec<_>>().join(" "))
        }
        // Laurent polynomials and other pairs lists.
        Value::Array(items) if items.iter().all(|i| matches!(i, Value::Array(p) if p.len() == 2 && !p[0].is_array())) => {
            Some(items.iter().map(|p| format!("{}:{}", p[0], p[1].to_string().trim_matches('"'))).collect::<Vec<_>>().join(" "))
        }
        _ => None,
    }
}

fn write(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    if let Some(s) = inline(v) {
        out.push_str(&format!("{pad}{s}\n"));
        return;
    }
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match inline(x) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        write(x, depth + 1, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            for (n, x) in items.iter().enumerate() {
                if n > 0 && x.is_object() {
                    out.push('\n');
                }
                write(x, depth, out);
            }
        }
        _ => unreachable!("scalars render inline"),
    }
}

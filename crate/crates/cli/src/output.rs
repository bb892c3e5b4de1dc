use clap::ValueEnum;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Flattens nested objects into dotted keys; arrays stay as compact JSON.
fn flatten(value: &Value, prefix: &str, out: &mut Vec<(String, String)>) {
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(v, &key, out);
            }
        }
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        Value::Null => out.push((prefix.to_string(), String::new())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub(crate) fn write_records(format: Format, records: &[Value], out: &mut String) {
    match format {
        Format::Json => {
            for r in records {
                out.push_str(&serde_json::to_string(r).expect("json values serialize"));
                out.push('\n');
            }
        }
        Format::Csv => {
            let rows: Vec<Vec<(String, String)>> = records
                .iter()
                .map(|r| {
                    let mut row = Vec::new();
                    flatten(r, "", &mut row);
                    row
                })
                .collect();
            let mut header: Vec<&str> = Vec::new();
            for row in &rows {
                for (k, _) in row {
                    if !header.contains(&k.as_str()) {
                        header.push(k);
                    }
                }
            }
            let line: Vec<String> = header.iter().map(|h| csv_field(h)).collect();
            out.push_str(&line.join(","));
            out.push('\n');
            for row in &rows {
                let line: Vec<String> = header
                    .iter()
                    .map(|h| {
                        row.iter()
                            .find(|(k, _)| k == h)
                            .map(|(_, v)| csv_field(v))
                            .unwrap_or_default()
                    })
                    .collect();
                out.push_str(&line.join(","));
                out.push('\n');
            }
        }
        Format::Text => {
            for r in records {
                let status = match r.get("pass").and_then(Value::as_bool) {
                    Some(true) => "PASS",
                    Some(false) => "FAIL",
                    None => "-",
                };
                let mut fields = Vec::new();
                flatten(r, "", &mut fields);
                let body: Vec<String> = fields
                    .into_iter()
                    .filter(|(k, _)| k != "pass")
                    .map(|(k, v)| format!("{k}={v}"))
                    .collect();
                out.push_str(status);
                out.push(' ');
                out.push_str(&body.join(" "));
                out.push('\n');
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn csv_uses_union_header_and_quotes() {
        let rows = vec![
            json!({"a": "1/2", "r": {"value": 3, "modulus": 25}, "pass": true}),
            json!({"a": "x,y", "extra": [1, 2], "pass": false}),
        ];
        let mut out = String::new();
        write_records(Format::Csv, &rows, &mut out);
        assert_eq!(
            out,
            "a,r.value,r.modulus,pass,extra\n1/2,3,25,true,\n\"x,y\",,,false,\"[1,2]\"\n"
        );
    }

    #[test]
    fn text_leads_with_status() {
        let mut out = String::new();
        write_records(Format::Text, &[json!({"lhs": "0/1", "pass": true})], &mut out);
        assert_eq!(out, "PASS lhs=0/1\n");
    }
}

//! Table and CSV renderings of a JSON value, so every mode carries the same data.

use serde_json::Value;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Mode {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Color {
    Auto,
    Always,
    Never,
}

impl Color {
    pub fn enabled(self) -> bool {
        use std::io::IsTerminal;
        match self {
            Color::Always => true,
            Color::Never => false,
            Color::Auto => std::io::stdout().is_terminal(),
        }
    }
}

/// One-cell rendering of a value.
pub fn cell(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        Value::Array(items) => {
            let inner: Vec<String> = items.iter().map(cell).collect();
            format!("({})", inner.join(", "))
        }
        Value::Object(map) => {
            let inner: Vec<String> = map
                .iter()
                .map(|(k, v)| format!("{k}={}", cell(v)))
                .collect();
            inner.join(" ")
        }
    }
}

fn paint(text: String, v: &Value, color: bool) -> String {
    match (color, v) {
        (true, Value::Bool(true)) => format!("\x1b[32m{text}\x1b[0m"),
        (true, Value::Bool(false)) => format!("\x1b[31m{text}\x1b[0m"),
        _ => text,
    }
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

/// Leaves of nested objects under dotted keys.
fn flatten(v: &Value) -> Vec<(String, &Value)> {
    fn walk<'a>(prefix: &str, v: &'a Value, out: &mut Vec<(String, &'a Value)>) {
        match v {
            Value::Object(map) if !map.is_empty() => {
                for (k, x) in map {
                    let key = if prefix.is_empty() {
                        k.clone()
                    } else {
                        format!("{prefix}.{k}")
                    };
                    walk(&key, x, out);
                }
            }
            _ => out.push((prefix.to_string(), v)),
        }
    }
    let mut out = Vec::new();
    walk("", v, &mut out);
    out
}

/// Column names and rows of a value viewed as a table.
fn grid(v: &Value) -> (Vec<String>, Vec<Vec<&Value>>) {
    match v {
        Value::Array(items) if items.iter().all(Value::is_object) && !items.is_empty() => {
            let mut cols: Vec<String> = Vec::new();
            for item in items {
                for k in item.as_object().expect("object").keys() {
                    if !cols.contains(k) {
                        cols.push(k.clone());
                    }
                }
            }
            let rows = items
                .iter()
                .map(|item| {
                    cols.iter()
                        .map(|c| item.get(c).unwrap_or(&Value::Null))
                        .collect()
                })
                .collect();
            (cols, rows)
        }
        Value::Object(_) => {
            let fields = flatten(v);
            (
                fields.iter().map(|(k, _)| k.clone()).collect(),
                vec![fields.into_iter().map(|(_, x)| x).collect()],
            )
        }
        Value::Array(items) => (
            vec!["value".into()],
            items.iter().map(|x| vec![x]).collect(),
        ),
        other => (vec!["value".into()], vec![vec![other]]),
    }
}

pub fn table(v: &Value, color: bool) -> String {
    match v {
        Value::Array(items) if items.iter().all(is_scalar) => {
            let words: Vec<String> = items.iter().map(cell).collect();
            format!("{}\n", words.join(" "))
        }
        Value::Object(_) => {
            let fields = flatten(v);
            let width = fields
                .iter()
                .map(|(k, _)| k.chars().count())
                .max()
                .unwrap_or(0);
            fields
                .iter()
                .map(|(k, x)| format!("{k:<width$}  {}\n", paint(cell(x), x, color)))
                .collect()
        }
        _ => {
            let (cols, rows) = grid(v);
            let cells: Vec<Vec<String>> = rows
                .iter()
                .map(|r| r.iter().map(|x| cell(x)).collect())
                .collect();
            let widths: Vec<usize> = cols
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    cells
                        .iter()
                        .map(|r| r[i].chars().count())
                        .chain([c.chars().count()])
                        .max()
                        .unwrap_or(0)
                })
                .collect();
            let mut out = format!(
                "{}\n",
                padded_join(
                    cols.iter()
                        .zip(&widths)
                        .map(|(c, w)| format!("{c:<w$}"))
                        .collect()
                )
            );
            for (r, raw) in cells.into_iter().zip(&rows) {
                let painted = r
                    .into_iter()
                    .zip(&widths)
                    .zip(raw)
                    .map(|((s, w), x)| paint(format!("{s:<w$}"), x, color))
                    .collect();
                out.push_str(&format!("{}\n", padded_join(painted)));
            }
            out
        }
    }
}

fn padded_join(items: Vec<String>) -> String {
    items.join("  ").trim_end().to_string()
}

pub fn csv(v: &Value) -> Result<String, CliError> {
    let (cols, rows) = grid(v);
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&cols)?;
    for r in rows {
        w.write_record(r.iter().map(|x| cell(x)))?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

pub fn json(v: &Value) -> Result<String, CliError> {
    Ok(format!("{}\n", serde_json::to_string_pretty(v)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn scalar_list_is_one_line() {
        assert_eq!(table(&json!(["0", "1/2", "1"]), false), "0 1/2 1\n");
    }

    #[test]
    fn object_rows_align() {
        let t = table(&json!({"holds": true, "n": 4}), false);
        assert_eq!(t, "holds  true\nn      4\n");
    }

    #[test]
    fn records_become_columns() {
        let v = json!([{"l": 1, "pair": ["1/2", "1/3"]}, {"l": 2, "pair": ["2/3", "2/7"]}]);
        assert_eq!(table(&v, false), "l  pair\n1  (1/2, 1/3)\n2  (2/3, 2/7)\n");
        assert_eq!(
            csv(&v).unwrap(),
            "l,pair\n1,\"(1/2, 1/3)\"\n2,\"(2/3, 2/7)\"\n"
        );
    }

    #[test]
    fn nested_objects_use_dotted_keys() {
        let t = table(&json!({"a": {"b": 1, "c": [1, 2]}}), false);
        assert_eq!(t, "a.b  1\na.c  (1, 2)\n");
    }

    #[test]
    fn color_marks_booleans() {
        assert!(table(&json!({"holds": true}), true).contains("\x1b[32mtrue"));
    }
}

//! Tabular results and their CSV / JSON encodings.

use std::fmt::Write as _;

use serde_json::{json, Map, Value};

use crate::error::CliError;

/// A rectangular table of reals with ordered `key=value` metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanResult {
    pub metadata: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl ScanResult {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        ScanResult {
            metadata: Vec::new(),
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn meta(&mut self, key: &str, value: impl ToString) -> &mut Self {
        let value = value.to_string();
        match self.metadata.iter_mut().find(|(k, _)| k == key) {
            Some(slot) => slot.1 = value,
            None => self.metadata.push((key.to_string(), value)),
        }
        self
    }

    pub fn get_meta(&self, key: &str) -> Option<&str> {
        self.metadata.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn push(&mut self, row: Vec<f64>) {
        assert_eq!(row.len(), self.columns.len(), "row width must match the header");
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.metadata {
            let _ = writeln!(out, "# {k}={v}");
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| format_value(*v)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self, CliError> {
        let mut result = ScanResult::new(Vec::<String>::new());
        let mut header = false;
        for (n, line) in text.lines().enumerate() {
            if let Some(meta) = line.strip_prefix('#') {
                let meta = meta.trim_start();
                let (k, v) = meta
                    .split_once('=')
                    .ok_or_else(|| CliError::Parse(format!("line {}: metadata without '='", n + 1)))?;
                result.metadata.push((k.to_string(), v.to_string()));
            } else if !header {
                result.columns = line.split(',').map(str::to_string).collect();
                header = true;
            } else if !line.is_empty() {
                let row = line
                    .split(',')
                    .map(|c| c.parse::<f64>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| CliError::Parse(format!("line {}: {e}", n + 1)))?;
                if row.len() != result.columns.len() {
                    return Err(CliError::Parse(format!(
                        "line {}: {} values for {} columns",
                        n + 1,
                        row.len(),
                        result.columns.len()
                    )));
                }
                result.rows.push(row);
            }
        }
        if !header {
            return Err(CliError::Parse("missing header row".into()));
        }
        Ok(result)
    }

    /// Non-finite values become the strings `"inf"`, `"-inf"`, `"NaN"`.
    pub fn to_json(&self) -> String {
        let metadata: Map<String, Value> = self
            .metadata
            .iter()
            .map(|(k, v)| (k.clone(), Value::String(v.clone())))
            .collect();
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| Value::Array(r.iter().map(|&v| json_value(v)).collect()))
            .collect();
        let doc = json!({ "metadata": metadata, "columns": self.columns, "rows": rows });
        let mut s = serde_json::to_string_pretty(&doc).expect("table serializes");
        s.push('\n');
        s
    }
}

/// 17 significant digits, enough to round-trip any f64.
pub fn format_value(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        v.to_string()
    }
}

fn json_value(v: f64) -> Value {
    serde_json::Number::from_f64(v)
        .map(Value::Number)
        .unwrap_or_else(|| Value::String(v.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> ScanResult {
        let mut r = ScanResult::new(["theta", "dcs"]);
        r.meta("command", "classical").meta("rho_l", 0.5);
        r.push(vec![0.1, 1.0 / 3.0]);
        r.push(vec![f64::INFINITY, -0.0]);
        r
    }

    #[test]
    fn csv_layout() {
        let csv = sample().to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "# command=classical");
        assert_eq!(lines[2], "theta,dcs");
        assert_eq!(lines[3], "1.0000000000000001e-1,3.3333333333333331e-1");
        assert_eq!(lines[4], "inf,-0.0000000000000000e0");
    }

    #[test]
    fn csv_round_trip() {
        let r = sample();
        assert_eq!(ScanResult::from_csv(&r.to_csv()).unwrap(), r);
    }

    #[test]
    fn meta_overwrites() {
        let mut r = sample();
        r.meta("rho_l", 2);
        assert_eq!(r.get_meta("rho_l"), Some("2"));
        assert_eq!(r.metadata.len(), 2);
    }

    #[test]
    fn ragged_rows_rejected() {
        assert!(ScanResult::from_csv("a,b\n1,2\n3\n").is_err());
        assert!(ScanResult::from_csv("# only=meta\n").is_err());
    }

    #[test]
    fn json_keeps_non_finite_as_strings() {
        let v: Value = serde_json::from_str(&sample().to_json()).unwrap();
        assert_eq!(v["rows"][1][0], Value::String("inf".into()));
        assert_eq!(v["metadata"]["rho_l"], Value::String("0.5".into()));
        assert_eq!(v["rows"][0][1].as_f64().unwrap(), 1.0 / 3.0);
    }
}

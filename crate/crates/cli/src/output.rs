use std::collections::BTreeMap;
use std::io::Write;

use anyhow::Result;
use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Bumped whenever a field is renamed or removed.
pub const SCHEMA_VERSION: &str = concat!("anomalyid/", env!("CARGO_PKG_VERSION"), "/1");

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub command: String,
    pub params: BTreeMap<String, Value>,
    pub results: BTreeMap<String, Value>,
    pub version: String,
    pub pass: bool,
}

impl OutputRecord {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            params: BTreeMap::new(),
            results: BTreeMap::new(),
            version: SCHEMA_VERSION.to_string(),
            pass: true,
        }
    }

    pub fn param(mut self, key: &str, value: impl Serialize) -> Self {
        self.params.insert(key.to_string(), to_value(value));
        self
    }

    pub fn result(&mut self, key: &str, value: impl Serialize) {
        self.results.insert(key.to_string(), to_value(value));
    }

    /// Records a rational as `"num/den"` plus a 15-digit decimal.
    pub fn rational(&mut self, key: &str, exact: String, value: f64) {
        self.result(key, exact);
        self.result(&format!("{key}_decimal"), format!("{value:.15}"));
    }

    pub fn check(&mut self, ok: bool) {
        self.pass &= ok;
    }

    pub fn write(&self, format: Format, out: &mut impl Write) -> Result<()> {
        match format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, self)?;
                writeln!(out)?;
            }
            Format::Csv => {
                // Scalars go in as-is; nested tables are embedded as JSON text.
                let mut header = vec!["command".to_string(), "version".to_string(), "pass".to_string()];
                let mut row = vec![self.command.clone(), self.version.clone(), self.pass.to_string()];
                for (prefix, map) in [("param", &self.params), ("result", &self.results)] {
                    for (k, v) in map {
                        header.push(format!("{prefix}.{k}"));
                        row.push(cell(v));
                    }
                }
                let mut w = csv::Writer::from_writer(&mut *out);
                w.write_record(&header)?;
                w.write_record(&row)?;
                w.flush()?;
            }
        }
        Ok(())
    }
}

fn to_value(value: impl Serialize) -> Value {
    // Non-finite floats serialize to null rather than failing the record.
    serde_json::to_value(value).unwrap_or(Value::Null)
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_has_one_header_and_one_row() {
        let mut rec = OutputRecord::new("formula").param("k", 2);
        rec.rational("probability", "5/8".into(), 0.625);
        rec.result("table", vec![1, 2]);
        let mut buf = Vec::new();
        rec.write(Format::Csv, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 2);
        assert!(lines[0].contains("result.probability_decimal"));
        assert!(lines[1].contains("0.625000000000000"));
        assert!(lines[1].contains("\"[1,2]\""));
    }

    #[test]
    fn json_round_trips() {
        let mut rec = OutputRecord::new("simulate").param("seed", 7u64);
        rec.result("z_score", Option::<f64>::None);
        rec.check(false);
        let mut buf = Vec::new();
        rec.write(Format::Json, &mut buf).unwrap();
        let back: OutputRecord = serde_json::from_slice(&buf).unwrap();
        assert_eq!(back, rec);
    }
}

//! Two-column `n,value` tables and their three text forms.

use std::fmt::Write as _;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Csv,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub n: usize,
    /// Exact decimal integer or `p/q`.
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table {
    pub sequence: String,
    pub values: Vec<Row>,
}

impl Table {
    pub fn new(sequence: &str, values: impl IntoIterator<Item = (usize, String)>) -> Self {
        Self {
            sequence: sequence.into(),
            values: values.into_iter().map(|(n, value)| Row { n, value }).collect(),
        }
    }

    pub fn emit(&self, format: Format) -> String {
        match format {
            Format::Csv => {
                let mut out = String::from("n,value\n");
                for r in &self.values {
                    let _ = writeln!(out, "{},{}", r.n, r.value);
                }
                out
            }
            Format::Json => {
                let mut out = serde_json::to_string(self).expect("plain data serializes");
                out.push('\n');
                out
            }
            Format::Plain => {
                let wn = self.values.iter().map(|r| r.n.to_string().len()).max().unwrap_or(0).max(1);
                let wv = self
                    .values
                    .iter()
                    .map(|r| r.value.len())
                    .max()
                    .unwrap_or(0)
                    .max(self.sequence.len());
                let mut out = format!("{:>wn$}  {:>wv$}\n", "n", self.sequence);
                for r in &self.values {
                    let _ = writeln!(out, "{:>wn$}  {:>wv$}", r.n, r.value);
                }
                out
            }
        }
    }

    /// Reads any of the three forms back; CSV carries no sequence name, so
    /// `fallback` supplies it.
    pub fn parse(text: &str, fallback: &str) -> Result<(Self, Format), String> {
        let trimmed = text.trim_start();
        if trimmed.starts_with('{') {
            let t: Table = serde_json::from_str(text).map_err(|e| format!("bad JSON table: {e}"))?;
            t.check()?;
            return Ok((t, Format::Json));
        }
        let mut lines = text.lines();
        let header = lines.next().ok_or("empty table")?;
        let (format, sequence) = if header == "n,value" {
            (Format::Csv, fallback.to_string())
        } else {
            let cols: Vec<&str> = header.split_whitespace().collect();
            match cols.as_slice() {
                ["n", name] => (Format::Plain, name.to_string()),
                _ => return Err(format!("unrecognized table header {header:?}")),
            }
        };
        let mut values = Vec::new();
        for (k, line) in lines.enumerate() {
            let (n, value) = match format {
                Format::Csv => line.split_once(',').ok_or(format!("line {}: expected n,value", k + 2))?,
                _ => {
                    let mut it = line.split_whitespace();
                    match (it.next(), it.next(), it.next()) {
                        (Some(n), Some(v), None) => (n, v),
                        _ => return Err(format!("line {}: expected two columns", k + 2)),
                    }
                }
            };
            let n = n.parse().map_err(|_| format!("line {}: bad index {n:?}", k + 2))?;
            values.push(Row { n, value: value.to_string() });
        }
        let t = Table { sequence, values };
        t.check()?;
        Ok((t, format))
    }

    fn check(&self) -> Result<(), String> {
        for r in &self.values {
            let ok = r
                .value
                .strip_prefix('-')
                .unwrap_or(&r.value)
                .split('/')
                .all(|part| !part.is_empty() && part.bytes().all(|b| b.is_ascii_digit()))
                && r.value.matches('/').count() <= 1;
            if !ok {
                return Err(format!("n = {}: {:?} is not an exact number", r.n, r.value));
            }
        }
        Ok(())
    }
}

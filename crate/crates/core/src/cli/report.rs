use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One component of a row key.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum KeyPart {
    Int(i64),
    Text(String),
}

impl From<u32> for KeyPart {
    fn from(x: u32) -> Self {
        KeyPart::Int(x.into())
    }
}

impl From<usize> for KeyPart {
    fn from(x: usize) -> Self {
        KeyPart::Int(x as i64)
    }
}

impl From<&str> for KeyPart {
    fn from(x: &str) -> Self {
        KeyPart::Text(x.to_string())
    }
}

impl std::fmt::Display for KeyPart {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            KeyPart::Int(x) => write!(f, "{x}"),
            KeyPart::Text(s) => f.write_str(s),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Row {
    pub key: Vec<KeyPart>,
    /// Decimal string or formatted polynomial.
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// Output of every subcommand.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub model: String,
    pub command: String,
    pub bounds: BTreeMap<String, u64>,
    pub rows: Vec<Row>,
    pub checks: Vec<Check>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl Report {
    pub fn new(model: &str, command: &str) -> Self {
        Report {
            model: model.to_string(),
            command: command.to_string(),
            bounds: BTreeMap::new(),
            rows: Vec::new(),
            checks: Vec::new(),
        }
    }

    pub fn bound(&mut self, name: &str, value: impl Into<u64>) {
        self.bounds.insert(name.to_string(), value.into());
    }

    pub fn row(&mut self, key: Vec<KeyPart>, value: impl ToString) {
        self.rows.push(Row { key, value: value.to_string() });
    }

    pub fn check(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), pass, detail: detail.into() });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    /// Sorts rows by key for stable output.
    pub fn sort(&mut self) {
        self.rows.sort();
    }

    fn columns(&self) -> Vec<String> {
        let width = self.rows.iter().map(|r| r.key.len()).max().unwrap_or(0);
        let named: &[&str] = match self.command.as_str() {
            "nd" => &["d"],
            "fano3" => &["a", "b"],
            "wdvv-count" => &["m"],
            "qring" => &["i", "j"],
            _ => &[],
        };
        if named.len() == width {
            named.iter().map(|s| s.to_string()).collect()
        } else {
            (1..=width).map(|i| format!("key{i}")).collect()
        }
    }

    pub fn emit(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => serde_json::to_string_pretty(self).map_err(|e| Error::Io(e.to_string())),
            Format::Csv => self.to_csv(),
            Format::Text => Ok(self.to_text()),
        }
    }

    pub fn parse_json(text: &str) -> Result<Report> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    fn to_csv(&self) -> Result<String> {
        let cols = self.columns();
        let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
        let io = |e: csv::Error| Error::Io(e.to_string());
        w.write_record(cols.iter().map(String::as_str).chain(["value"])).map_err(io)?;
        for r in &self.rows {
            let mut rec: Vec<String> = r.key.iter().map(ToString::to_string).collect();
            rec.resize(cols.len(), String::new());
            rec.push(r.value.clone());
            w.write_record(&rec).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
    }

    fn to_text(&self) -> String {
        let cols = self.columns();
        let mut out = String::new();
        let bounds: Vec<String> = self.bounds.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let _ = writeln!(out, "# {} on {} [{}]", self.command, self.model, bounds.join(", "));
        for r in &self.rows {
            let generic = cols.first().is_some_and(|c| c.starts_with("key"));
            let key: Vec<String> = r
                .key
                .iter()
                .zip(&cols)
                .map(|(k, c)| if generic { k.to_string() } else { format!("{c}={k}") })
                .collect();
            let _ = writeln!(out, "{}: {}", key.join(" "), r.value);
        }
        for c in &self.checks {
            let status = if c.pass { "PASS" } else { "FAIL" };
            if c.detail.is_empty() {
                let _ = writeln!(out, "{status} {}", c.name);
            } else {
                let _ = writeln!(out, "{status} {}: {}", c.name, c.detail);
            }
        }
        out
    }
}

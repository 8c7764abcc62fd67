//! Table assembly and CSV/JSON emission.
//!
//! CSV is the primary format: one header row, one row per record, '.'
//! decimal separator, UTF-8, no quoting (cells never contain commas).
//! JSON mirrors the same records as an array of objects. Output is
//! byte-deterministic: no timestamps, fixed column order, shortest
//! round-trip float formatting.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::Path;

#[derive(Debug, Clone)]
pub enum Cell {
    Str(String),
    F64(f64),
    U64(u64),
    Bool(bool),
    Empty,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Str(s) => s.clone(),
            Cell::F64(v) => fmt_f64(*v),
            Cell::U64(v) => v.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> serde_json::Value {
        match self {
            Cell::Str(s) => serde_json::Value::String(s.clone()),
            Cell::F64(v) => serde_json::Number::from_f64(*v)
                .map(serde_json::Value::Number)
                .unwrap_or(serde_json::Value::String(fmt_f64(*v))),
            Cell::U64(v) => serde_json::Value::Number((*v).into()),
            Cell::Bool(b) => serde_json::Value::Bool(*b),
            Cell::Empty => serde_json::Value::Null,
        }
    }
}

pub fn fmt_f64(v: f64) -> String {
    if v.is_nan() {
        "nan".to_string()
    } else if v.is_infinite() {
        if v > 0.0 { "inf" } else { "-inf" }.to_string()
    } else {
        format!("{v}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    /// Key-value provenance lines; rendered as `# key: value` comments in
    /// CSV and as a metadata object in JSON.
    pub metadata: Vec<(String, String)>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            metadata: Vec::new(),
        }
    }

    pub fn with_columns(columns: Vec<String>) -> Self {
        Table {
            columns,
            rows: Vec::new(),
            metadata: Vec::new(),
        }
    }

    pub fn meta(&mut self, key: &str, value: impl Into<String>) {
        self.metadata.push((key.to_string(), value.into()));
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.render_csv(),
            Format::Json => self.render_json(),
        }
    }

    fn render_csv(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.metadata {
            let _ = writeln!(out, "# {k}: {v}");
        }
        let _ = writeln!(out, "{}", self.columns.join(","));
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::csv).collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }

    fn render_json(&self) -> String {
        let mut meta = serde_json::Map::new();
        for (k, v) in &self.metadata {
            meta.insert(k.clone(), serde_json::Value::String(v.clone()));
        }
        let records: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = serde_json::Map::new();
                for (c, cell) in self.columns.iter().zip(row.iter()) {
                    obj.insert(c.to_string(), cell.json());
                }
                serde_json::Value::Object(obj)
            })
            .collect();
        let doc = serde_json::json!({
            "metadata": serde_json::Value::Object(meta),
            "records": records,
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("json render");
        s.push('\n');
        s
    }
}

/// Write to the file at `out`, or stdout when absent.
pub fn emit(table: &Table, format: Format, out: Option<&Path>) -> io::Result<()> {
    let body = table.render(format);
    match out {
        Some(path) => fs::write(path, body),
        None => io::stdout().write_all(body.as_bytes()),
    }
}

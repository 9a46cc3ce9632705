//! Tabular results and their CSV / JSON renderings.
//!
//! Every CSV starts with a `#` comment line carrying the crate version, the
//! config hash and the seed, followed by a header row. Floats are written in
//! shortest round-trip exponent form, so identical inputs give identical bytes.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde_json::{json, Map, Value};

use crate::error::Result;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Text(String),
    Int(u64),
    Float(f64),
    /// No value at this grid point (e.g. an allocation outside the protocol's domain).
    Empty,
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Empty, Cell::Float)
    }
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => format!("{v:e}"),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Text(s) => Value::from(s.as_str()),
            Cell::Int(v) => Value::from(*v),
            Cell::Float(v) => serde_json::Number::from_f64(*v).map_or(Value::Null, Value::Number),
            Cell::Empty => Value::Null,
        }
    }
}

/// Provenance written alongside every table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Provenance {
    pub config_sha256: String,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<S: AsRef<str>>(name: impl Into<String>, columns: &[S]) -> Self {
        Table {
            name: name.into(),
            columns: columns.iter().map(|c| c.as_ref().to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width for table {}", self.name);
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    pub fn to_csv(&self, prov: &Provenance) -> String {
        let mut out = format!(
            "# swipt-coop {} table={} config_sha256={} seed={}\n",
            env!("CARGO_PKG_VERSION"),
            self.name,
            prov.config_sha256,
            prov.seed
        );
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::csv).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    /// JSON object with the same provenance, column order and one record per row.
    pub fn to_json(&self, prov: &Provenance) -> Value {
        let records: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let m: Map<String, Value> = self.columns.iter().cloned().zip(row.iter().map(Cell::json)).collect();
                Value::Object(m)
            })
            .collect();
        json!({
            "table": self.name,
            "version": env!("CARGO_PKG_VERSION"),
            "config_sha256": prov.config_sha256,
            "seed": prov.seed,
            "columns": self.columns,
            "records": records,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

fn render(table: &Table, prov: &Provenance, format: Format) -> String {
    match format {
        Format::Csv => table.to_csv(prov),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&table.to_json(prov)).expect("json renders");
            s.push('\n');
            s
        }
    }
}

/// Renders all tables into one stream: CSVs separated by blank lines, or a JSON array.
pub fn render_all(tables: &[Table], prov: &Provenance, format: Format) -> String {
    match (format, tables) {
        (_, [one]) => render(one, prov, format),
        (Format::Csv, _) => tables
            .iter()
            .map(|t| t.to_csv(prov))
            .collect::<Vec<_>>()
            .join("\n"),
        (Format::Json, _) => {
            let all: Vec<Value> = tables.iter().map(|t| t.to_json(prov)).collect();
            let mut s = serde_json::to_string_pretty(&all).expect("json renders");
            s.push('\n');
            s
        }
    }
}

/// Writes one table to `out`, or several into the directory `out` as `<name>.<ext>`.
/// Without `out`, everything goes to `stdout`.
pub fn emit(tables: &[Table], prov: &Provenance, format: Format, out: Option<&Path>, stdout: &mut dyn Write) -> Result<Vec<std::path::PathBuf>> {
    match out {
        None => {
            stdout.write_all(render_all(tables, prov, format).as_bytes())?;
            Ok(Vec::new())
        }
        Some(path) if tables.len() == 1 && !path.is_dir() => {
            if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                fs::create_dir_all(parent)?;
            }
            fs::write(path, render(&tables[0], prov, format))?;
            Ok(vec![path.to_path_buf()])
        }
        Some(dir) => {
            fs::create_dir_all(dir)?;
            tables
                .iter()
                .map(|t| {
                    let p = dir.join(format!("{}.{}", t.name, format.extension()));
                    fs::write(&p, render(t, prov, format))?;
                    Ok(p)
                })
                .collect()
        }
    }
}

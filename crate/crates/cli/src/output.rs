use std::collections::BTreeMap;
use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use serde_json::{json, Map, Value};

use crate::config::Format;
use crate::error::{CliError, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Num(f64),
    Text(String),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Num(x) => format_real(*x),
            Cell::Text(s) => s.clone(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Cell::Num(x) => json!(x),
            Cell::Text(s) => json!(s),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

/// Shortest round-trip decimal, switching to exponent form for very small or
/// very large magnitudes.
pub fn format_real(x: f64) -> String {
    let a = x.abs();
    if a == 0.0 || (1e-4..1e15).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

/// A rectangular table of finite values plus a sorted metadata block.
#[derive(Clone, Debug, PartialEq)]
pub struct ResultTable {
    columns: Vec<String>,
    rows: Vec<Vec<Cell>>,
    metadata: BTreeMap<String, String>,
}

impl ResultTable {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        ResultTable {
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
            metadata: BTreeMap::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) -> Result<()> {
        if row.len() != self.columns.len() {
            return Err(CliError::Table(format!(
                "row {} has {} cells, expected {}",
                self.rows.len(),
                row.len(),
                self.columns.len()
            )));
        }
        if let Some(pos) = row.iter().position(|c| matches!(c, Cell::Num(x) if !x.is_finite())) {
            return Err(CliError::Table(format!(
                "non-finite value in row {}, column {}",
                self.rows.len(),
                self.columns[pos]
            )));
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn set_meta(&mut self, key: impl Into<String>, value: impl ToString) {
        self.metadata.insert(key.into(), value.to_string());
    }

    pub fn columns(&self) -> &[String] {
        &self.columns
    }

    pub fn rows(&self) -> &[Vec<Cell>] {
        &self.rows
    }

    pub fn metadata(&self) -> &BTreeMap<String, String> {
        &self.metadata
    }

    /// Numeric column by name, skipping text cells.
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.columns.iter().position(|c| c == name)?;
        Some(
            self.rows
                .iter()
                .filter_map(|r| match r[i] {
                    Cell::Num(x) => Some(x),
                    Cell::Text(_) => None,
                })
                .collect(),
        )
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        for (k, v) in &self.metadata {
            writeln!(w, "# {k}: {v}")?;
        }
        let mut out = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(w);
        out.write_record(&self.columns)?;
        for row in &self.rows {
            out.write_record(row.iter().map(Cell::render))?;
        }
        out.flush()
    }

    pub fn to_json(&self) -> Value {
        let metadata: Map<String, Value> = self.metadata.iter().map(|(k, v)| (k.clone(), json!(v))).collect();
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| Value::Array(r.iter().map(Cell::to_json).collect()))
            .collect();
        json!({ "metadata": metadata, "columns": self.columns, "rows": rows })
    }

    pub fn write_json<W: Write>(&self, mut w: W) -> Result<()> {
        let s = serde_json::to_string_pretty(&self.to_json()).map_err(|e| CliError::Encode(e.to_string()))?;
        writeln!(w, "{s}").map_err(|source| CliError::Write {
            path: "<stream>".into(),
            source,
        })
    }

    pub fn write_to<W: Write>(&self, w: W, format: Format) -> Result<()> {
        match format {
            Format::Csv => self.write_csv(w).map_err(|source| CliError::Write {
                path: "<stream>".into(),
                source,
            }),
            Format::Json => self.write_json(w),
        }
    }
}

/// Writes `table` to `path`, or to stdout when `path` is `None`.
pub fn write_output(table: &ResultTable, path: Option<&Path>, format: Format) -> Result<()> {
    let relabel = |e: CliError, p: &str| match e {
        CliError::Write { source, .. } => CliError::Write {
            path: p.to_string(),
            source,
        },
        other => other,
    };
    match path {
        Some(p) => {
            let shown = p.display().to_string();
            let file = File::create(p).map_err(|source| CliError::Write {
                path: shown.clone(),
                source,
            })?;
            let mut buf = io::BufWriter::new(file);
            table.write_to(&mut buf, format).map_err(|e| relabel(e, &shown))?;
            buf.flush().map_err(|source| CliError::Write { path: shown, source })
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            table.write_to(&mut lock, format).map_err(|e| relabel(e, "<stdout>"))
        }
    }
}

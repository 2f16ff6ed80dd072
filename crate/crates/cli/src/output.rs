//! Tabular results and their CSV / JSON encodings.
//!
//! CSV: one header row, comma separated, `.` decimal point, every row
//! newline-terminated.  Reals are written with 17 significant digits
//! (`{:.16e}`), so identical runs give byte-identical files.  A complex
//! column `z` becomes the column pair `re_z,im_z`.
//!
//! JSON: `{"meta": …, "columns": […], "data": [[…], …]}`, with complex cells
//! as `[re, im]` pairs.  The document deserialises back into [`Document`].

use std::fmt::Write as _;

use kgcavity::Complex64;
use serde::{Deserialize, Serialize};

use crate::config::{Format, RunConfig};

/// Value type of a table column.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColumnKind {
    Int,
    Real,
    Complex,
    Text,
    Bool,
}

/// A named, typed column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Column {
    pub name: String,
    pub kind: ColumnKind,
}

impl Column {
    pub fn new(name: &str, kind: ColumnKind) -> Self {
        Self { name: name.to_string(), kind }
    }
}

/// One table cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Cell {
    Bool(bool),
    Int(i64),
    Real(f64),
    Complex([f64; 2]),
    Text(String),
}

impl Cell {
    pub fn complex(z: Complex64) -> Self {
        Cell::Complex([z.re, z.im])
    }

    pub fn text(s: impl Into<String>) -> Self {
        Cell::Text(s.into())
    }

    fn kind(&self) -> ColumnKind {
        match self {
            Cell::Bool(_) => ColumnKind::Bool,
            Cell::Int(_) => ColumnKind::Int,
            Cell::Real(_) => ColumnKind::Real,
            Cell::Complex(_) => ColumnKind::Complex,
            Cell::Text(_) => ColumnKind::Text,
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Real(x)
    }
}

impl From<usize> for Cell {
    fn from(n: usize) -> Self {
        Cell::Int(n as i64)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

/// Rows of typed cells under a fixed column list.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    columns: Vec<Column>,
    rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: Vec<Column>) -> Self {
        Self { columns, rows: Vec::new() }
    }

    /// Appends a row.
    ///
    /// # Panics
    /// If the row does not match the column list in length and types.
    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width does not match the header");
        for (cell, col) in row.iter().zip(&self.columns) {
            assert_eq!(cell.kind(), col.kind, "cell type does not match column `{}`", col.name);
        }
        self.rows.push(row);
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    pub fn rows(&self) -> &[Vec<Cell>] {
        &self.rows
    }

    /// CSV encoding with complex columns split into `re_`/`im_` pairs.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let header: Vec<String> = self
            .columns
            .iter()
            .flat_map(|c| match c.kind {
                ColumnKind::Complex => vec![format!("re_{}", c.name), format!("im_{}", c.name)],
                _ => vec![c.name.clone()],
            })
            .collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for row in &self.rows {
            let fields: Vec<String> = row
                .iter()
                .flat_map(|cell| match cell {
                    Cell::Bool(b) => vec![b.to_string()],
                    Cell::Int(n) => vec![n.to_string()],
                    Cell::Real(x) => vec![real(*x)],
                    Cell::Complex([re, im]) => vec![real(*re), real(*im)],
                    Cell::Text(s) => vec![quote(s)],
                })
                .collect();
            out.push_str(&fields.join(","));
            out.push('\n');
        }
        out
    }
}

/// Seventeen significant digits: enough to round-trip any `f64`.
fn real(x: f64) -> String {
    let mut s = String::new();
    write!(s, "{x:.16e}").expect("writing to a String cannot fail");
    s
}

fn quote(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Provenance block of a JSON document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    pub command: String,
    pub version: String,
    /// Reserved; the engine is deterministic.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
    /// The resolved configuration, defaults included.
    pub config: RunConfig,
    pub warnings: Vec<String>,
}

/// Top-level JSON document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Document {
    pub meta: Meta,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub columns: Option<Vec<String>>,
    pub data: Vec<Vec<Cell>>,
}

impl Document {
    pub fn new(meta: Meta, table: &Table) -> Self {
        Self {
            meta,
            columns: Some(table.columns.iter().map(|c| c.name.clone()).collect()),
            data: table.rows.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents contain only finite numbers");
        s.push('\n');
        s
    }
}

/// Renders a command result in the requested format.
pub fn render(format: Format, meta: Meta, table: &Table) -> String {
    match format {
        Format::Csv => table.to_csv(),
        Format::Json => Document::new(meta, table).to_json(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let mut t = Table::new(vec![
            Column::new("n", ColumnKind::Int),
            Column::new("omega", ColumnKind::Real),
            Column::new("alpha", ColumnKind::Complex),
            Column::new("label", ColumnKind::Text),
            Column::new("ok", ColumnKind::Bool),
        ]);
        t.push(vec![1usize.into(), 0.1.into(), Cell::complex(Complex64::new(1.0, -2.5)), Cell::text("1:2"), true.into()]);
        t.push(vec![2usize.into(), 3.0.into(), Cell::complex(Complex64::new(0.0, 1e-300)), Cell::text("a,b"), false.into()]);
        t
    }

    #[test]
    fn csv_layout() {
        let csv = sample().to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "n,omega,re_alpha,im_alpha,label,ok");
        assert_eq!(lines[1], "1,1.0000000000000001e-1,1.0000000000000000e0,-2.5000000000000000e0,1:2,true");
        assert!(lines[2].ends_with(",\"a,b\",false"));
        assert!(csv.ends_with('\n'));
    }

    #[test]
    fn json_round_trips() {
        let meta = Meta {
            command: "spectrum".into(),
            version: "0".into(),
            seed: Some(3),
            config: RunConfig::default(),
            warnings: vec!["w".into()],
        };
        let doc = Document::new(meta, &sample());
        let parsed: Document = serde_json::from_str(&doc.to_json()).unwrap();
        assert_eq!(parsed, doc);
    }
}

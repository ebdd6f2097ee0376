//! Tabular reports as CSV or JSON with 17 significant digits per float.

use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Bool(bool),
    Text(String),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
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

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

#[derive(Debug)]
pub enum ReportError {
    Shape { row: usize, len: usize, columns: usize },
    Io { path: String, source: std::io::Error },
}

impl std::fmt::Display for ReportError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ReportError::Shape { row, len, columns } => write!(f, "row {row} has {len} cells, expected {columns}"),
            ReportError::Io { path, source } => write!(f, "{path}: {source}"),
        }
    }
}

impl std::error::Error for ReportError {}

/// Seventeen significant digits, enough to recover any f64 exactly.
pub fn format_float(v: f64) -> String {
    if v.is_nan() {
        "NaN".into()
    } else if v.is_infinite() {
        if v > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{v:.16e}")
    }
}

impl Report {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Report { columns: columns.into_iter().map(Into::into).collect(), rows: vec![] }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        self.rows.push(row);
    }

    fn check(&self) -> Result<(), ReportError> {
        for (i, r) in self.rows.iter().enumerate() {
            if r.len() != self.columns.len() {
                return Err(ReportError::Shape { row: i, len: r.len(), columns: self.columns.len() });
            }
        }
        Ok(())
    }

    pub fn to_csv(&self) -> Result<String, ReportError> {
        self.check()?;
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        let io = |e: csv::Error| ReportError::Io { path: "<csv>".into(), source: e.into() };
        w.write_record(&self.columns).map_err(io)?;
        for r in &self.rows {
            w.write_record(r.iter().map(|c| match c {
                Cell::Num(v) => format_float(*v),
                Cell::Int(v) => v.to_string(),
                Cell::Bool(v) => v.to_string(),
                Cell::Text(s) => s.clone(),
            }))
            .map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| ReportError::Io { path: "<csv>".into(), source: e.into_error() })?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    /// {"columns": [...], "rows": [{column: value, ...}, ...]} with keys in
    /// column order. Non-finite floats become null.
    pub fn to_json(&self) -> Result<String, ReportError> {
        self.check()?;
        let q = |s: &str| serde_json::to_string(s).expect("string serializes");
        let mut out = String::from("{\n  \"columns\": [");
        out.push_str(&self.columns.iter().map(|c| q(c)).collect::<Vec<_>>().join(", "));
        out.push_str("],\n  \"rows\": [");
        for (i, r) in self.rows.iter().enumerate() {
            out.push_str(if i == 0 { "\n    {" } else { ",\n    {" });
            let cells: Vec<String> = self
                .columns
                .iter()
                .zip(r)
                .map(|(k, c)| {
                    let v = match c {
                        Cell::Num(v) if v.is_finite() => format_float(*v),
                        Cell::Num(_) => "null".into(),
                        Cell::Int(v) => v.to_string(),
                        Cell::Bool(v) => v.to_string(),
                        Cell::Text(s) => q(s),
                    };
                    format!("{}: {v}", q(k))
                })
                .collect();
            out.push_str(&cells.join(", "));
            out.push('}');
        }
        out.push_str(if self.rows.is_empty() { "]\n}\n" } else { "\n  ]\n}\n" });
        Ok(out)
    }

    pub fn render(&self, format: Format) -> Result<String, ReportError> {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }
}

/// Writes the report to `path`, or to stdout when `path` is None.
pub fn emit_report(report: &Report, format: Format, path: Option<&Path>) -> Result<(), ReportError> {
    let text = report.render(format)?;
    match path {
        Some(p) => std::fs::write(p, text).map_err(|source| ReportError::Io { path: p.display().to_string(), source }),
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|source| ReportError::Io { path: "<stdout>".into(), source }),
    }
}

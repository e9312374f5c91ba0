//! Matrix and vector document ingestion.
//!
//! Canonical format is JSON: `{"n": 2, "entries": [[1,2],[4,3]], "label": "..."}`
//! with `label` optional. CSV is accepted for convenience: n lines of n
//! comma-separated numbers, n inferred from the line count. Parsing is
//! locale-independent (dot decimal separator). Initial-state vectors are a
//! plain JSON array of reals.

use std::path::{Path, PathBuf};

use matexp::RealSquareMatrix;
use serde::Deserialize;

/// Parsed matrix file, still unvalidated against the core invariants.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixDocument {
    pub order: usize,
    pub entries: Vec<Vec<f64>>,
    pub label: Option<String>,
}

impl MatrixDocument {
    pub fn to_matrix(&self) -> Result<RealSquareMatrix, DocumentError> {
        for (i, row) in self.entries.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if !v.is_finite() {
                    return Err(DocumentError::NonFinite { row: i + 1, column: j + 1 });
                }
            }
        }
        RealSquareMatrix::from_rows(&self.entries).map_err(|e| DocumentError::Invalid(e.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl Format {
    /// `.csv` selects CSV, anything else is treated as JSON.
    pub fn infer(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("csv") => Format::Csv,
            _ => Format::Json,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum DocumentError {
    #[error("cannot read {path}: {message}")]
    Read { path: PathBuf, message: String },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("matrix not square")]
    NotSquare,
    #[error("non-finite entry at row {row}, column {column}")]
    NonFinite { row: usize, column: usize },
    #[error("empty document")]
    Empty,
    #[error("{0}")]
    Invalid(String),
}

#[derive(Deserialize)]
struct RawMatrixDocument {
    n: usize,
    entries: Vec<Vec<f64>>,
    #[serde(default)]
    label: Option<String>,
}

pub fn parse_matrix_document(path: &Path, format: Format) -> Result<MatrixDocument, DocumentError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| DocumentError::Read { path: path.to_path_buf(), message: e.to_string() })?;
    match format {
        Format::Json => parse_matrix_json_str(&text),
        Format::Csv => parse_matrix_csv_str(&text),
    }
}

pub fn parse_matrix_json_str(text: &str) -> Result<MatrixDocument, DocumentError> {
    let raw: RawMatrixDocument = serde_json::from_str(text).map_err(|e| DocumentError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    if raw.n == 0 {
        return Err(DocumentError::Empty);
    }
    if raw.entries.len() != raw.n || raw.entries.iter().any(|r| r.len() != raw.n) {
        return Err(DocumentError::NotSquare);
    }
    let doc = MatrixDocument { order: raw.n, entries: raw.entries, label: raw.label };
    doc.to_matrix()?;
    Ok(doc)
}

pub fn parse_matrix_csv_str(text: &str) -> Result<MatrixDocument, DocumentError> {
    let mut lines: Vec<(usize, &str)> = text.lines().enumerate().collect();
    while lines.last().is_some_and(|(_, l)| l.trim().is_empty()) {
        lines.pop();
    }
    if lines.is_empty() {
        return Err(DocumentError::Empty);
    }
    let mut entries = Vec::with_capacity(lines.len());
    for (lineno, line) in lines {
        let mut row = Vec::new();
        for (fieldno, field) in line.split(',').enumerate() {
            let trimmed = field.trim();
            let value: f64 = trimmed.parse().map_err(|_| DocumentError::Parse {
                line: lineno + 1,
                column: fieldno + 1,
                message: format!("invalid number {trimmed:?}"),
            })?;
            row.push(value);
        }
        entries.push(row);
    }
    let n = entries.len();
    if entries.iter().any(|r| r.len() != n) {
        return Err(DocumentError::NotSquare);
    }
    let doc = MatrixDocument { order: n, entries, label: None };
    doc.to_matrix()?;
    Ok(doc)
}

/// Initial-state vector: a JSON array of finite reals.
pub fn parse_vector_json_str(text: &str) -> Result<Vec<f64>, DocumentError> {
    let v: Vec<f64> = serde_json::from_str(text).map_err(|e| DocumentError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    if v.is_empty() {
        return Err(DocumentError::Empty);
    }
    if let Some(idx) = v.iter().position(|x| !x.is_finite()) {
        return Err(DocumentError::NonFinite { row: 1, column: idx + 1 });
    }
    Ok(v)
}

pub fn parse_vector_document(path: &Path) -> Result<Vec<f64>, DocumentError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| DocumentError::Read { path: path.to_path_buf(), message: e.to_string() })?;
    parse_vector_json_str(&text)
}

/// Serializes a matrix in the document schema. serde_json emits the
/// shortest representation that round-trips each double exactly.
pub fn write_matrix_json(m: &RealSquareMatrix, label: Option<&str>) -> String {
    let rows: Vec<Vec<f64>> = (0..m.order())
        .map(|i| (0..m.order()).map(|j| m.get(i, j)).collect())
        .collect();
    let mut value = serde_json::json!({ "n": m.order(), "entries": rows });
    if let Some(label) = label {
        value["label"] = serde_json::Value::String(label.to_string());
    }
    value.to_string()
}

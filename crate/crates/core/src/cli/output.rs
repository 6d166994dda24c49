//! CSV tables, JSON manifests and content-addressed file names.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::Result;

/// One CSV cell. Floats are written in shortest round-trip form.
#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
    Bool(bool),
    Empty,
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => format!("{v:?}"),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}
impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}
impl From<u64> for Cell {
    fn from(v: u64) -> Self {
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
impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Empty, Cell::Float)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Column {
    pub name: &'static str,
    pub unit: &'static str,
}

pub const fn col(name: &'static str, unit: &'static str) -> Column {
    Column { name, unit }
}

/// A table with a fixed column schema.
#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    /// Experiment name used in the file name, e.g. `sweep-r` or `sweep-r-hist`.
    pub name: String,
    pub columns: Vec<Column>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(name: impl Into<String>, columns: Vec<Column>) -> Self {
        Table {
            name: name.into(),
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(
            row.len(),
            self.columns.len(),
            "row width must match the schema"
        );
        self.rows.push(row);
    }

    /// RFC 4180 text: CRLF line endings, fields quoted when needed.
    pub fn to_csv(&self) -> Result<Vec<u8>> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::CRLF)
            .from_writer(Vec::new());
        w.write_record(self.columns.iter().map(|c| c.name))?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::render))?;
        }
        Ok(w.into_inner().map_err(|e| e.into_error())?)
    }
}

/// First 12 hex digits of the SHA-256 of `text`.
pub fn config_hash(text: &str) -> String {
    let digest = Sha256::digest(text.as_bytes());
    digest.iter().take(6).map(|b| format!("{b:02x}")).collect()
}

/// `<experiment>_<L>_<sector>_<hash>.<ext>`.
pub fn file_name(experiment: &str, sites: usize, sector: &str, hash: &str, ext: &str) -> String {
    format!("{experiment}_{sites}_{sector}_{hash}.{ext}")
}

#[derive(Clone, Debug, Serialize)]
pub struct FileRecord {
    pub path: String,
    pub rows: usize,
    pub columns: Vec<Column>,
}

/// Run manifest. `schema` names the layout version of this document.
#[derive(Clone, Debug, Serialize)]
pub struct Manifest {
    pub schema: &'static str,
    pub experiment: String,
    pub code_version: &'static str,
    pub config_hash: String,
    pub config: serde_json::Value,
    pub threads: usize,
    pub wall_seconds: f64,
    /// Sector dimension at every sweep point, in sweep order.
    pub d_sec: Vec<usize>,
    pub files: Vec<FileRecord>,
    pub warnings: Vec<String>,
}

pub const MANIFEST_SCHEMA: &str = "pxp-floquet-manifest/1";

/// Writes the tables and returns their records.
pub fn write_tables(
    dir: &Path,
    tables: &[Table],
    sites: usize,
    sector: &str,
    hash: &str,
) -> Result<Vec<FileRecord>> {
    fs::create_dir_all(dir)?;
    let mut out = Vec::new();
    for t in tables {
        let name = file_name(&t.name, sites, sector, hash, "csv");
        fs::write(dir.join(&name), t.to_csv()?)?;
        out.push(FileRecord {
            path: name,
            rows: t.rows.len(),
            columns: t.columns.clone(),
        });
    }
    Ok(out)
}

pub fn write_manifest(
    dir: &Path,
    manifest: &Manifest,
    sites: usize,
    sector: &str,
) -> Result<PathBuf> {
    let path = dir.join(file_name(
        &manifest.experiment,
        sites,
        sector,
        &manifest.config_hash,
        "json",
    ));
    fs::write(&path, serde_json::to_string_pretty(manifest)? + "\n")?;
    Ok(path)
}

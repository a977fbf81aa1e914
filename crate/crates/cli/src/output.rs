//! CSV tables, number formatting, and atomic file output with a JSON
//! sidecar.

use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Serialize;

/// Energies: four significant digits.
pub fn energy(x: f64) -> String {
    significant(x, 4)
}

/// Distances: three decimals, the precision of the published tables.
pub fn distance(x: f64) -> String {
    unsigned_zero(format!("{x:.3}"))
}

pub fn field(b: f64) -> String {
    format!("{b:e}")
}

pub fn percent(x: f64) -> String {
    unsigned_zero(format!("{:.3}", 100.0 * x))
}

/// `-0.000` → `0.000`: a value that rounds to zero carries no sign.
fn unsigned_zero(s: String) -> String {
    match s.strip_prefix('-') {
        Some(rest) if rest.bytes().all(|b| b == b'0' || b == b'.') => rest.to_string(),
        _ => s,
    }
}

pub fn significant(x: f64, digits: i32) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (digits - 1 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

pub fn optional(x: Option<f64>, fmt: fn(f64) -> String) -> String {
    x.map(fmt).unwrap_or_default()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Self {
            header: header.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> Result<Vec<u8>> {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer.write_record(&self.header)?;
        for row in &self.rows {
            writer.write_record(row)?;
        }
        Ok(writer.into_inner()?)
    }
}

/// Reproducibility record written next to every CSV file.
#[derive(Debug, Serialize)]
pub struct Sidecar<'a> {
    pub format_version: u32,
    pub generator: &'static str,
    pub version: &'static str,
    pub command: &'a str,
    pub arguments: serde_json::Value,
    pub config: serde_json::Value,
    pub columns: &'a [&'static str],
    pub rows: usize,
}

/// `fig1.csv` → `fig1.json`.
pub fn sidecar_path(csv: &Path) -> PathBuf {
    csv.with_extension("json")
}

/// Writes through a temporary file in the target directory, renamed into
/// place only once complete.
fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)
        .with_context(|| format!("creating a temporary file in {}", dir.display()))?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path)
        .with_context(|| format!("moving output into {}", path.display()))?;
    Ok(())
}

/// One finished output file and its metadata.
pub struct Artifact<'a> {
    pub path: PathBuf,
    pub table: &'a Table,
    pub sidecar: Sidecar<'a>,
}

/// Writes every artifact (CSV + sidecar). Serialization happens before any
/// file is touched, so an encoding error leaves nothing behind.
pub fn write_all(artifacts: &[Artifact<'_>]) -> Result<()> {
    let encoded: Vec<(PathBuf, Vec<u8>, Vec<u8>)> = artifacts
        .iter()
        .map(|a| {
            let mut json = serde_json::to_vec_pretty(&a.sidecar)?;
            json.push(b'\n');
            Ok((a.path.clone(), a.table.to_csv()?, json))
        })
        .collect::<Result<_>>()?;
    for (path, csv, json) in encoded {
        write_atomic(&path, &csv)?;
        write_atomic(&sidecar_path(&path), &json)?;
    }
    Ok(())
}

/// CSV to stdout, or to `out` (plus sidecar) when given.
pub fn emit(table: &Table, out: Option<&Path>, sidecar: Sidecar<'_>) -> Result<()> {
    match out {
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(&table.to_csv()?)?;
            lock.flush()?;
            Ok(())
        }
        Some(path) => write_all(&[Artifact {
            path: path.to_path_buf(),
            table,
            sidecar,
        }]),
    }
}

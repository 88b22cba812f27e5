//! Artifact writing: CSV tables, JSON documents and the run manifest.
//!
//! Floats are written in Rust's shortest round-trip form (`{:?}`: `1.0`,
//! `0.25`, `3.9e-17`); missing values are empty CSV cells and `null` in
//! JSON.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;

use crate::CliError;

/// Formats an optional float for a CSV cell.
pub fn cell(v: Option<f64>) -> String {
    match v {
        Some(x) if x.is_finite() => format!("{x:?}"),
        _ => String::new(),
    }
}

pub fn csv_bytes(header: &[&str], rows: &[Vec<String>]) -> Result<Vec<u8>, CliError> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(header).map_err(CliError::internal)?;
    for r in rows {
        w.write_record(r).map_err(CliError::internal)?;
    }
    w.into_inner().map_err(|e| CliError::internal(e.to_string()))
}

pub fn json_bytes<T: Serialize>(value: &T) -> Result<Vec<u8>, CliError> {
    let mut v = serde_json::to_vec_pretty(value).map_err(CliError::internal)?;
    v.push(b'\n');
    Ok(v)
}

#[derive(Debug, Clone, Serialize)]
pub struct RowStatus {
    pub row: usize,
    pub status: String,
}

#[derive(Debug, Serialize)]
pub struct RunManifest<P: Serialize> {
    pub command: String,
    pub parameters: P,
    pub version: String,
    pub timestamp_unix: u64,
    pub files: Vec<String>,
    pub rows: Vec<RowStatus>,
}

/// Collects the files of one command and writes them with a manifest.
pub struct Artifacts {
    dir: PathBuf,
    command: String,
    files: Vec<(String, Vec<u8>)>,
}

impl Artifacts {
    pub fn new(dir: &Path, command: &str) -> Self {
        Self { dir: dir.to_path_buf(), command: command.to_string(), files: Vec::new() }
    }

    pub fn add(&mut self, name: &str, bytes: Vec<u8>) {
        self.files.push((name.to_string(), bytes));
    }

    /// Writes every file and `<command>.manifest.json`; returns the paths.
    pub fn finish<P: Serialize>(self, parameters: P, rows: Vec<RowStatus>) -> Result<Vec<PathBuf>, CliError> {
        fs::create_dir_all(&self.dir).map_err(CliError::internal)?;
        let mut written = Vec::new();
        for (name, bytes) in &self.files {
            let path = self.dir.join(name);
            fs::write(&path, bytes).map_err(CliError::internal)?;
            written.push(path);
        }
        let manifest = RunManifest {
            command: self.command.clone(),
            parameters,
            version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp_unix: SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0),
            files: self.files.iter().map(|(n, _)| n.clone()).collect(),
            rows,
        };
        let path = self.dir.join(format!("{}.manifest.json", self.command));
        fs::write(&path, json_bytes(&manifest)?).map_err(CliError::internal)?;
        written.push(path);
        Ok(written)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cells() {
        assert_eq!(cell(Some(0.1)), "0.1");
        assert_eq!(cell(Some(1.0)), "1.0");
        assert_eq!(cell(Some(-3.9e-17)), "-3.9e-17");
        assert_eq!(cell(None), "");
        assert_eq!(cell(Some(f64::NAN)), "");
        let x = 0.1 + 0.2;
        assert_eq!(cell(Some(x)).parse::<f64>().unwrap(), x);
    }

    #[test]
    fn csv_layout() {
        let bytes = csv_bytes(&["a", "b"], &[vec!["1".into(), "".into()]]).unwrap();
        assert_eq!(String::from_utf8(bytes).unwrap(), "a,b\n1,\n");
    }
}

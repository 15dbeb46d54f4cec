//! Artifact writers: time-series CSV, scan CSV and JSON documents.
//!
//! Floats are written in shortest round-trip scientific notation, so a CSV
//! parses back to exactly the values that were computed, and re-running a
//! config reproduces every file byte for byte.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use cqed_core::dynamics::TimeSeries;
use serde::Serialize;

use crate::error::SimError;

/// Shortest representation that parses back to the same `f64`.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:e}")
}

/// `t_seconds,<state>_re,<state>_im,<state>_pop,...,fidelity`, one row per sample.
pub fn time_series_csv(series: &TimeSeries) -> String {
    let mut out = String::from("t_seconds");
    for label in &series.labels {
        let _ = write!(out, ",{label}_re,{label}_im,{label}_pop");
    }
    out.push_str(",fidelity\n");
    for (k, t) in series.times.iter().enumerate() {
        out.push_str(&fmt_f64(*t));
        for (amps, pops) in series.amplitudes.iter().zip(&series.populations) {
            let _ = write!(out, ",{},{},{}", fmt_f64(amps[k].re), fmt_f64(amps[k].im), fmt_f64(pops[k]));
        }
        let _ = writeln!(out, ",{}", fmt_f64(series.fidelity[k]));
    }
    out
}

/// A CSV with a header row and rows of floats.
pub fn table_csv(header: &[&str], rows: &[Vec<f64>]) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        let cells: Vec<String> = row.iter().map(|x| fmt_f64(*x)).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

/// Collects the files of one run under an output directory.
#[derive(Debug)]
pub struct ArtifactDir {
    root: PathBuf,
    written: Vec<String>,
}

impl ArtifactDir {
    pub fn create(root: &Path) -> Result<Self, SimError> {
        fs::create_dir_all(root).map_err(|e| SimError::Io { path: root.to_path_buf(), source: e })?;
        Ok(ArtifactDir { root: root.to_path_buf(), written: Vec::new() })
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    /// File names written so far, in order.
    pub fn written(&self) -> &[String] {
        &self.written
    }

    pub fn write_text(&mut self, name: &str, text: &str) -> Result<(), SimError> {
        let path = self.root.join(name);
        fs::write(&path, text).map_err(|e| SimError::Io { path, source: e })?;
        self.written.push(name.to_string());
        Ok(())
    }

    pub fn write_json<T: Serialize>(&mut self, name: &str, value: &T) -> Result<(), SimError> {
        let mut text = serde_json::to_string_pretty(value).expect("summary types serialize");
        text.push('\n');
        self.write_text(name, &text)
    }
}

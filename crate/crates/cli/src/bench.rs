//! Runs an external SAT solver over manifest entries.

use std::path::Path;
use std::process::{Command, Stdio};
use std::thread;
use std::time::{Duration, Instant};

use anyhow::{bail, Result};
use serde::{Deserialize, Serialize};

/// One generated formula.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub graph: String,
    pub function: String,
    pub path: String,
    pub variables: usize,
    pub clauses: usize,
    pub width: usize,
}

pub fn read_manifest(path: &Path) -> Result<Vec<ManifestEntry>> {
    let mut r = csv::Reader::from_path(path)?;
    Ok(r.deserialize().collect::<Result<_, _>>()?)
}

/// Appends entries, writing the header if the file is new or empty.
pub fn append_manifest(path: &Path, entries: &[ManifestEntry]) -> Result<()> {
    let fresh = std::fs::metadata(path).map(|m| m.len() == 0).unwrap_or(true);
    let file = std::fs::OpenOptions::new().create(true).append(true).open(path)?;
    let mut w = csv::WriterBuilder::new().has_headers(fresh).from_writer(file);
    for e in entries {
        w.serialize(e)?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BenchRow {
    pub entry: usize,
    pub graph: String,
    pub function: String,
    pub path: String,
    /// `SAT`, `UNSAT`, `TIMEOUT`, `UNKNOWN(<code>)` or `SPAWN-FAILED`.
    pub status: String,
    pub wall_ms: u128,
}

/// Splits the template on whitespace and substitutes `{file}`.
pub fn command_line(template: &str, file: &str) -> Result<Vec<String>> {
    if !template.contains("{file}") {
        bail!("solver template must contain `{{file}}`");
    }
    let words: Vec<String> = template
        .split_whitespace()
        .map(|w| w.replace("{file}", file))
        .collect();
    if words.is_empty() {
        bail!("empty solver template");
    }
    Ok(words)
}

pub fn run_entry(index: usize, e: &ManifestEntry, template: &str, timeout: Duration) -> BenchRow {
    let mut row = BenchRow {
        entry: index,
        graph: e.graph.clone(),
        function: e.function.clone(),
        path: e.path.clone(),
        status: String::new(),
        wall_ms: 0,
    };
    let words = match command_line(template, &e.path) {
        Ok(w) => w,
        Err(_) => {
            row.status = "SPAWN-FAILED".into();
            return row;
        }
    };
    let start = Instant::now();
    let child = Command::new(&words[0])
        .args(&words[1..])
        .stdin(Stdio::null())
        .stdout(Stdio::null())
        .stderr(Stdio::null())
        .spawn();
    let mut child = match child {
        Ok(c) => c,
        Err(_) => {
            row.status = "SPAWN-FAILED".into();
            return row;
        }
    };
    let status = loop {
        if start.elapsed() >= timeout {
            let _ = child.kill();
            let _ = child.wait();
            break None;
        }
        match child.try_wait() {
            Ok(Some(s)) => break Some(s),
            Ok(None) => thread::sleep(Duration::from_millis(2)),
            Err(_) => break None,
        }
    };
    row.wall_ms = start.elapsed().as_millis();
    row.status = match status.and_then(|s| s.code()) {
        _ if status.is_none() => "TIMEOUT".into(),
        Some(10) => "SAT".into(),
        Some(20) => "UNSAT".into(),
        Some(c) => format!("UNKNOWN({c})"),
        None => "UNKNOWN(signal)".into(),
    };
    row
}

//! Deterministic file emission helpers: CSV writers use the shortest
//! round-trip float form, JSON uses pretty serde output with fixed field
//! order, so identical runs produce identical bytes.

use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::errors::{CliError, CliResult};

pub fn write_text(dir: &Path, name: &str, body: &str) -> CliResult<PathBuf> {
    let path = dir.join(name);
    std::fs::write(&path, body).map_err(CliError::from)?;
    Ok(path)
}

pub fn write_json<T: Serialize>(dir: &Path, name: &str, value: &T) -> CliResult<PathBuf> {
    let mut body = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Compute(format!("json encoding: {e}")))?;
    body.push('\n');
    write_text(dir, name, &body)
}

/// Render one CSV row from float cells with full round-trip precision.
pub fn csv_row(cells: &[String]) -> String {
    cells.join(",")
}

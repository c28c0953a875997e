//! Serialized outputs, built in memory and written in one pass.

use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::CliError;

/// One output file: its name (before the configured prefix) and contents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Artifact {
    pub name: String,
    pub bytes: Vec<u8>,
}

impl Artifact {
    #[must_use]
    pub fn new(name: &str, bytes: Vec<u8>) -> Self {
        Self { name: name.to_owned(), bytes }
    }
}

/// Pretty-printed JSON with a trailing newline. Maps are ordered, so the
/// bytes depend only on the values.
///
/// # Errors
/// [`CliError::Numerical`] (stage `output`) if serialization fails.
pub fn json_bytes<T: Serialize>(value: &T) -> Result<Vec<u8>, CliError> {
    let mut bytes = serde_json::to_vec_pretty(value).map_err(|e| CliError::numerical("output", e))?;
    bytes.push(b'\n');
    Ok(bytes)
}

/// Runs a CSV writer against an in-memory buffer.
///
/// # Errors
/// Whatever `write` returns.
pub fn csv_bytes(write: impl FnOnce(&mut Vec<u8>) -> Result<(), CliError>) -> Result<Vec<u8>, CliError> {
    let mut buf = Vec::new();
    write(&mut buf)?;
    Ok(buf)
}

/// Writes the artifacts into `dir` (created if missing), in order, and
/// returns their paths.
///
/// # Errors
/// [`CliError::Io`] if the directory or a file cannot be written.
pub fn write_artifacts(dir: &Path, prefix: &str, artifacts: &[Artifact]) -> Result<Vec<PathBuf>, CliError> {
    let io = |path: &Path, e: std::io::Error| CliError::Io { path: path.display().to_string(), message: e.to_string() };
    std::fs::create_dir_all(dir).map_err(|e| io(dir, e))?;
    let mut paths = Vec::with_capacity(artifacts.len());
    for artifact in artifacts {
        let path = dir.join(format!("{prefix}{}", artifact.name));
        std::fs::write(&path, &artifact.bytes).map_err(|e| io(&path, e))?;
        paths.push(path);
    }
    Ok(paths)
}

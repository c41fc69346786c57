use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;

use crate::run::CliError;

/// Written next to each command's outputs as `<first output>.manifest.json`.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub inputs: Vec<String>,
    pub config: BTreeMap<String, String>,
    pub version: String,
    pub outputs: Vec<String>,
    /// Seconds since the Unix epoch; `SOURCE_DATE_EPOCH` overrides the clock.
    pub timestamp: u64,
}

impl RunManifest {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            inputs: Vec::new(),
            config: BTreeMap::new(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            outputs: Vec::new(),
            timestamp: timestamp(),
        }
    }

    pub fn input(&mut self, path: &Path) {
        self.inputs.push(path.display().to_string());
    }

    pub fn set(&mut self, key: &str, value: impl ToString) {
        self.config.insert(key.to_string(), value.to_string());
    }

    /// Copies `key=value` lines into the config snapshot.
    pub fn set_kv_text(&mut self, text: &str) {
        for line in text.lines() {
            if let Some((k, v)) = line.split_once('=') {
                self.set(k.trim(), v.trim());
            }
        }
    }

    /// Writes `contents` to `path` atomically and records it.
    pub fn write(&mut self, path: &Path, contents: &str) -> Result<(), CliError> {
        write_atomic(path, contents)?;
        self.outputs.push(path.display().to_string());
        Ok(())
    }

    pub fn finish(self) -> Result<(), CliError> {
        let Some(first) = self.outputs.first() else {
            return Ok(());
        };
        let path = PathBuf::from(format!("{first}.manifest.json"));
        let mut json = serde_json::to_string_pretty(&self).map_err(|e| CliError::input(format!("manifest: {e}")))?;
        json.push('\n');
        write_atomic(&path, &json)
    }
}

fn timestamp() -> u64 {
    if let Some(epoch) = std::env::var("SOURCE_DATE_EPOCH").ok().and_then(|v| v.parse().ok()) {
        return epoch;
    }
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0)
}

/// Temp file in the destination directory, then rename over the target.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let fail = |e: std::io::Error| CliError::input(format!("cannot write {}: {e}", path.display()));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(fail)?;
    tmp.write_all(contents.as_bytes()).map_err(fail)?;
    tmp.as_file().sync_all().map_err(fail)?;
    tmp.persist(path).map_err(|e| fail(e.error))?;
    Ok(())
}

pub fn read_text(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))
}

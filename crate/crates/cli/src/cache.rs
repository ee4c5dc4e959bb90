//! Append-only JSONL result cache for `scan`. One line per (prime, command,
//! parameters) evaluation, carrying the serialized output rows; a later scan
//! with the same command and parameters reuses matching lines instead of
//! recomputing, and appends only what was missing.

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub schema_version: u32,
    pub p: u64,
    /// Stable command name ("ihara", "granville", ...).
    pub command: String,
    /// The parameters that determine the result, canonically ordered.
    pub params: BTreeMap<String, Value>,
    /// The serialized output rows for this prime.
    pub result: Vec<Value>,
    pub toolkit_version: String,
}

/// Reads every entry; a missing file is an empty cache, an unparsable line or
/// an unknown schema version is an error (the cache is never silently
/// dropped or truncated).
pub fn load(path: &Path) -> Result<Vec<CacheEntry>, String> {
    let file = match File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
        Err(e) => return Err(format!("cannot open cache {}: {e}", path.display())),
    };
    let mut entries = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| format!("cannot read cache {}: {e}", path.display()))?;
        if line.trim().is_empty() {
            continue;
        }
        let entry: CacheEntry = serde_json::from_str(&line)
            .map_err(|e| format!("corrupt cache {} at line {}: {e}", path.display(), i + 1))?;
        if entry.schema_version != SCHEMA_VERSION {
            return Err(format!(
                "cache {} at line {}: unsupported schema version {}",
                path.display(),
                i + 1,
                entry.schema_version
            ));
        }
        entries.push(entry);
    }
    Ok(entries)
}

/// Appends entries as whole lines; called only with freshly computed results.
pub fn append(path: &Path, entries: &[CacheEntry]) -> Result<(), String> {
    if entries.is_empty() {
        return Ok(());
    }
    let mut file = OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .map_err(|e| format!("cannot open cache {} for writing: {e}", path.display()))?;
    for entry in entries {
        let line = serde_json::to_string(entry)
            .map_err(|e| format!("cannot serialize cache entry: {e}"))?;
        writeln!(file, "{line}").map_err(|e| format!("cannot write cache {}: {e}", path.display()))?;
    }
    Ok(())
}

//! On-disk cache of check results, one JSON file per `(p, m, check, seed)`.
//!
//! Entries carry the tool version; an entry written by another version, or one
//! that fails to parse, is reported on stderr and recomputed. Writes go
//! through a temporary file in the same directory followed by a rename, so a
//! concurrent reader never sees a partial file.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};
use sl2q_core::{Check, CheckResult};
use tempfile::NamedTempFile;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub version: String,
    pub p: u32,
    pub m: u32,
    pub check: String,
    pub seed: u64,
    pub result: CheckResult,
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Lookup {
    Hit,
    Miss,
    /// The file existed but was unusable; the reason is in the string.
    Invalid(String),
}

#[derive(Debug, Clone)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, p: u32, m: u32, check: Check, seed: u64) -> PathBuf {
        self.dir.join(format!("{check}-p{p}-m{m}-s{seed}.json"))
    }

    pub fn load(&self, p: u32, m: u32, check: Check, seed: u64) -> (Option<CacheEntry>, Lookup) {
        let path = self.path(p, m, check, seed);
        let text = match fs::read_to_string(&path) {
            Ok(text) => text,
            Err(_) => return (None, Lookup::Miss),
        };
        let entry: CacheEntry = match serde_json::from_str(&text) {
            Ok(entry) => entry,
            Err(e) => return (None, Lookup::Invalid(format!("{}: {e}", path.display()))),
        };
        if entry.version != TOOL_VERSION {
            let reason = format!(
                "{}: written by version {}, current is {TOOL_VERSION}",
                path.display(),
                entry.version
            );
            return (None, Lookup::Invalid(reason));
        }
        if entry.p != p || entry.m != m || entry.check != check.name() || entry.seed != seed {
            return (None, Lookup::Invalid(format!("{}: key mismatch", path.display())));
        }
        (Some(entry), Lookup::Hit)
    }

    pub fn store(&self, entry: &CacheEntry) -> Result<()> {
        let check: Check = entry.check.parse().map_err(anyhow::Error::msg)?;
        let path = self.path(entry.p, entry.m, check, entry.seed);
        write_atomic(&path, serde_json::to_string_pretty(entry)?.as_bytes())
    }
}

/// Writes `bytes` to `path` via a temporary sibling and a rename.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut tmp = NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path)
        .with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

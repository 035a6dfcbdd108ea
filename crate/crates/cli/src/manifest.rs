//! Run manifest and payload checksums.
//!
//! A checksum covers the JSON payload with every `elapsed_ms` and `timestamp`
//! key removed, serialized with sorted keys, so identical runs produce
//! identical checksums whatever their timing.

use std::collections::BTreeMap;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};
use sl2q_core::Field;

use crate::cache::TOOL_VERSION;

/// Keys excluded from checksums.
pub const VOLATILE_KEYS: [&str; 2] = ["elapsed_ms", "timestamp"];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldEntry {
    pub p: u32,
    pub m: u32,
    pub modulus: Vec<u32>,
}

impl From<&Field> for FieldEntry {
    fn from(f: &Field) -> Self {
        FieldEntry {
            p: f.p(),
            m: f.m(),
            modulus: f.modulus().to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool_version: String,
    pub command: String,
    pub fields: Vec<FieldEntry>,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
    /// Output file name to SHA-256 hex digest.
    pub checksums: BTreeMap<String, String>,
}

impl RunManifest {
    pub fn new(command: impl Into<String>, fields: Vec<FieldEntry>) -> Self {
        RunManifest {
            tool_version: TOOL_VERSION.to_string(),
            command: command.into(),
            fields,
            timestamp: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
            checksums: BTreeMap::new(),
        }
    }
}

/// `value` with the volatile keys removed at every depth.
pub fn strip_volatile(value: &Value) -> Value {
    match value {
        Value::Object(map) => Value::Object(
            map.iter()
                .filter(|(k, _)| !VOLATILE_KEYS.contains(&k.as_str()))
                .map(|(k, v)| (k.clone(), strip_volatile(v)))
                .collect(),
        ),
        Value::Array(items) => Value::Array(items.iter().map(strip_volatile).collect()),
        other => other.clone(),
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Checksum of a JSON payload, ignoring timing.
pub fn json_checksum(value: &Value) -> String {
    let canonical = serde_json::to_vec(&strip_volatile(value)).expect("JSON values serialize");
    sha256_hex(&canonical)
}

//! One JSON manifest per run: what was asked, what was read and written, how it ended.

use std::collections::BTreeMap;

use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct FileDigest {
    /// `-` for standard output.
    pub path: String,
    pub sha256: String,
    pub bytes: usize,
}

impl FileDigest {
    pub fn of(path: &str, content: &[u8]) -> Self {
        FileDigest { path: path.to_string(), sha256: sha256_hex(content), bytes: content.len() }
    }
}

pub fn sha256_hex(content: &[u8]) -> String {
    hex::encode(Sha256::digest(content))
}

#[derive(Clone, Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub inputs: Vec<FileDigest>,
    pub outputs: Vec<FileDigest>,
    pub threads: usize,
    pub wall_time_seconds: f64,
    pub exit_code: i32,
    /// False when a budget ran out and only partial results were written.
    pub complete: bool,
    pub summary: Vec<String>,
}

impl RunManifest {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("manifest serializes")
    }
}

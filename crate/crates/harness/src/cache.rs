//! Content-addressed result cache and run records.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::config::{hex, CachePolicy, Command, SweepConfig};
use crate::error::{HarnessError, Result};

/// Environment variable naming the cache root.
pub const CACHE_ENV: &str = "PRETHERMAL_CACHE";
pub const RECORD_FILE: &str = "record.json";

pub fn cache_root() -> PathBuf {
    std::env::var_os(CACHE_ENV).map(PathBuf::from).unwrap_or_else(|| PathBuf::from("cache"))
}

/// Named output files, kept sorted by name.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outputs {
    pub files: BTreeMap<String, Vec<u8>>,
}

impl Outputs {
    pub fn insert(&mut self, name: impl Into<String>, contents: impl Into<Vec<u8>>) {
        self.files.insert(name.into(), contents.into());
    }

    pub fn get(&self, name: &str) -> Option<&[u8]> {
        self.files.get(name).map(Vec::as_slice)
    }

    pub fn extend(&mut self, other: Outputs) {
        self.files.extend(other.files);
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FileEntry {
    pub name: String,
    pub bytes: u64,
    pub sha256: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunRecord {
    pub command: String,
    pub digest: String,
    pub tool_version: String,
    pub started_unix: u64,
    pub finished_unix: u64,
    pub files: Vec<FileEntry>,
}

/// Record name in the output directory, where several commands may share one directory.
pub fn out_record_name(command: Command) -> String {
    format!("{}_record.json", command.name())
}

fn unix_now() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0)
}

fn write(path: &Path, bytes: &[u8]) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).map_err(|e| HarnessError::io(dir, e))?;
    }
    fs::write(path, bytes).map_err(|e| HarnessError::io(path, e))
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex(&Sha256::digest(bytes))
}

/// What [`execute`] did.
#[derive(Clone, Debug)]
pub struct Execution {
    pub record: RunRecord,
    pub reused: bool,
    pub out_dir: PathBuf,
}

/// Loads a cached run when every listed file is present with matching content.
fn load_cached(dir: &Path) -> Option<(RunRecord, Outputs)> {
    let text = fs::read_to_string(dir.join(RECORD_FILE)).ok()?;
    let record: RunRecord = serde_json::from_str(&text).ok()?;
    let mut outputs = Outputs::default();
    for f in &record.files {
        let bytes = fs::read(dir.join(&f.name)).ok()?;
        if sha256_hex(&bytes) != f.sha256 {
            return None;
        }
        outputs.insert(f.name.clone(), bytes);
    }
    Some((record, outputs))
}

/// Runs `compute` unless the cache holds this config's results, then copies them to `config.out`.
pub fn execute(
    command: Command,
    config: &SweepConfig,
    root: &Path,
    compute: impl FnOnce(&SweepConfig) -> Result<Outputs>,
) -> Result<Execution> {
    config.validate(command)?;
    let digest = config.digest();
    let dir = root.join(command.name()).join(&digest);
    let cached = match config.cache {
        CachePolicy::Reuse => load_cached(&dir),
        CachePolicy::Overwrite => None,
    };
    let reused = cached.is_some();
    let (record, outputs) = match cached {
        Some(hit) => hit,
        None => {
            let started_unix = unix_now();
            let outputs = compute(config)?;
            let files = outputs
                .files
                .iter()
                .map(|(name, bytes)| FileEntry {
                    name: name.clone(),
                    bytes: bytes.len() as u64,
                    sha256: sha256_hex(bytes),
                })
                .collect();
            let record = RunRecord {
                command: command.name().to_string(),
                digest,
                tool_version: env!("CARGO_PKG_VERSION").to_string(),
                started_unix,
                finished_unix: unix_now(),
                files,
            };
            for (name, bytes) in &outputs.files {
                write(&dir.join(name), bytes)?;
            }
            write(&dir.join(RECORD_FILE), serde_json::to_string_pretty(&record)?.as_bytes())?;
            (record, outputs)
        }
    };
    for (name, bytes) in &outputs.files {
        write(&config.out.join(name), bytes)?;
    }
    write(&config.out.join(out_record_name(command)), serde_json::to_string_pretty(&record)?.as_bytes())?;
    Ok(Execution { record, reused, out_dir: config.out.clone() })
}

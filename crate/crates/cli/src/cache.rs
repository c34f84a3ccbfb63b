//! On-disk cache of run records, one JSON file per (command, parameters).
//!
//! Writes go to a temporary file in the cache directory and are renamed into
//! place. Entries written by another tool or format version are ignored, and
//! entries whose digest does not match their payload are reported as corrupt.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

/// Environment variable overriding the cache directory.
pub const CACHE_DIR_ENV: &str = "INDSAT_CACHE_DIR";

/// Bumped whenever the record layout or payload meaning changes.
pub const CACHE_FORMAT: u32 = 1;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub format: u32,
    pub tool_version: String,
    pub command: String,
    pub parameters: Value,
    pub payload: Value,
    /// Hex SHA-256 of the payload's compact JSON.
    pub digest: String,
    pub timestamp: u64,
}

fn sha256_hex(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

impl RunRecord {
    pub fn new(command: &str, parameters: Value, payload: Value) -> RunRecord {
        let timestamp = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
        let digest = RunRecord::digest_of(&payload);
        RunRecord {
            format: CACHE_FORMAT,
            tool_version: TOOL_VERSION.to_string(),
            command: command.to_string(),
            parameters,
            payload,
            digest,
            timestamp,
        }
    }

    pub fn digest_of(payload: &Value) -> String {
        sha256_hex(&payload.to_string())
    }

    pub fn is_intact(&self) -> bool {
        self.digest == RunRecord::digest_of(&self.payload)
    }

    pub fn is_current(&self) -> bool {
        self.format == CACHE_FORMAT && self.tool_version == TOOL_VERSION
    }
}

#[derive(Debug, PartialEq)]
pub enum Lookup {
    Hit(RunRecord),
    Miss,
    /// Written by another version; ignored.
    Stale,
    /// Unreadable or inconsistent; ignored.
    Corrupt(String),
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn at(dir: impl Into<PathBuf>) -> Cache {
        Cache { dir: dir.into() }
    }

    /// The directory from the environment override, else the user cache
    /// directory; `None` when neither is known.
    pub fn from_env() -> Option<Cache> {
        if let Some(dir) = std::env::var_os(CACHE_DIR_ENV) {
            return Some(Cache::at(dir));
        }
        let base = std::env::var_os("XDG_CACHE_HOME")
            .map(PathBuf::from)
            .or_else(|| std::env::var_os("HOME").map(|h| Path::new(&h).join(".cache")))?;
        Some(Cache::at(base.join("indsat")))
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// Entry file for a command and its canonical parameters.
    pub fn path_for(&self, command: &str, parameters: &Value) -> PathBuf {
        let key = sha256_hex(&format!("{command}\n{parameters}"));
        self.dir.join(format!("{command}-{}.json", &key[..32]))
    }

    pub fn load(&self, command: &str, parameters: &Value) -> Lookup {
        let path = self.path_for(command, parameters);
        let text = match std::fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Lookup::Miss,
            Err(e) => return Lookup::Corrupt(format!("{}: {e}", path.display())),
        };
        let record: RunRecord = match serde_json::from_str(&text) {
            Ok(r) => r,
            Err(e) => return Lookup::Corrupt(format!("{}: {e}", path.display())),
        };
        if !record.is_current() {
            return Lookup::Stale;
        }
        if !record.is_intact() || record.command != command || &record.parameters != parameters {
            return Lookup::Corrupt(format!("{}: digest or key mismatch", path.display()));
        }
        Lookup::Hit(record)
    }

    pub fn store(&self, record: &RunRecord) -> std::io::Result<PathBuf> {
        std::fs::create_dir_all(&self.dir)?;
        let path = self.path_for(&record.command, &record.parameters);
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(serde_json::to_string_pretty(record).expect("serialisable").as_bytes())?;
        tmp.write_all(b"\n")?;
        tmp.as_file().sync_all()?;
        tmp.persist(&path).map_err(|e| e.error)?;
        Ok(path)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn sample() -> RunRecord {
        RunRecord::new("solve", json!({"n": 3, "target": "antichain:3"}), json!({"min_size": 6, "sets": ["000"]}))
    }

    #[test]
    fn roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::at(dir.path());
        let r = sample();
        cache.store(&r).unwrap();
        assert_eq!(cache.load("solve", &r.parameters), Lookup::Hit(r.clone()));
        assert_eq!(cache.load("solve", &json!({"n": 4})), Lookup::Miss);
    }

    #[test]
    fn stale_and_corrupt_entries_are_skipped() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::at(dir.path());
        let mut r = sample();
        r.tool_version = "0.0.0-old".into();
        cache.store(&r).unwrap();
        assert_eq!(cache.load("solve", &r.parameters), Lookup::Stale);

        let path = cache.path_for("solve", &r.parameters);
        std::fs::write(&path, "{ not json").unwrap();
        assert!(matches!(cache.load("solve", &r.parameters), Lookup::Corrupt(_)));

        let mut r = sample();
        r.payload = json!({"min_size": 5});
        cache.store(&r).unwrap();
        assert!(matches!(cache.load("solve", &r.parameters), Lookup::Corrupt(_)));
    }

    #[test]
    fn store_leaves_no_temporary_files() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::at(dir.path().join("nested"));
        cache.store(&sample()).unwrap();
        let names: Vec<_> = std::fs::read_dir(cache.dir()).unwrap().map(|e| e.unwrap().file_name()).collect();
        assert_eq!(names.len(), 1);
    }
}

//! Content-addressed cache of computed results, one JSON file per record.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Duration, SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::Result;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordMeta {
    pub tool_version: String,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
    pub runtime_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub key: String,
    pub payload: serde_json::Value,
    pub meta: RecordMeta,
}

impl ResultRecord {
    pub fn new(key: String, payload: serde_json::Value, runtime: Duration) -> ResultRecord {
        let timestamp = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
        ResultRecord {
            key,
            payload,
            meta: RecordMeta {
                tool_version: TOOL_VERSION.to_string(),
                timestamp,
                runtime_ms: runtime.as_millis() as u64,
            },
        }
    }
}

/// SHA-256 of the family, `k` and operation name, hex encoded.
pub fn record_key(family: &str, k: usize, operation: &str) -> String {
    let mut hasher = Sha256::new();
    for part in [family, &k.to_string(), operation, TOOL_VERSION] {
        hasher.update(part.as_bytes());
        hasher.update([0u8]);
    }
    hex::encode(hasher.finalize())
}

/// Records live at `<dir>/<first two hex digits>/<key>.json`.
#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Cache {
        Cache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(&key[..2.min(key.len())]).join(format!("{key}.json"))
    }

    /// The stored record, if present and written by this tool version.
    pub fn load(&self, key: &str) -> Result<Option<ResultRecord>> {
        let path = self.path(key);
        let text = match fs::read_to_string(&path) {
            Ok(text) => text,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let record: ResultRecord = serde_json::from_str(&text)?;
        Ok((record.key == key && record.meta.tool_version == TOOL_VERSION).then_some(record))
    }

    /// Writes to a temporary file in the target directory, then renames it
    /// into place so readers never see a partial record.
    pub fn store(&self, record: &ResultRecord) -> Result<()> {
        let path = self.path(&record.key);
        let parent = path.parent().expect("record path has a parent");
        fs::create_dir_all(parent)?;
        let nanos = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map_or(0, |d| d.subsec_nanos());
        let tmp = parent.join(format!(".{}.{}.{nanos}.tmp", record.key, std::process::id()));
        fs::write(&tmp, serde_json::to_vec_pretty(record)?)?;
        fs::rename(&tmp, &path)?;
        Ok(())
    }
}

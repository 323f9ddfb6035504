//! Search results on disk, one JSON file per key, named by the SHA-256 of
//! the key. An entry stores its report as a string together with the
//! digest of that string, so truncated or edited files are detected and
//! recomputed. Witnesses are re-verified by the caller before reuse.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::report::RunReport;

pub const DEFAULT_DIR: &str = ".wdelta-cache";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheKey {
    pub kind: String,
    /// `cube:4`, `slice:6:2`, `ternary:3`, or `file:<sha256 of the canonical .fam>`.
    pub ground: String,
    pub n: usize,
    pub k: Option<usize>,
}

impl CacheKey {
    fn file_name(&self) -> String {
        let canonical = serde_json::to_string(self).expect("keys serialize");
        format!("{}.json", sha256_hex(canonical.as_bytes()))
    }
}

#[derive(Serialize, Deserialize)]
struct CacheEntry {
    key: CacheKey,
    digest: String,
    payload: String,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}

/// Why an entry could not be used.
#[derive(Debug, PartialEq, Eq)]
pub enum Miss {
    Absent,
    Corrupted(String),
}

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, key: &CacheKey) -> PathBuf {
        self.dir.join(key.file_name())
    }

    pub fn load(&self, key: &CacheKey) -> Result<RunReport, Miss> {
        let text = match fs::read_to_string(self.path_for(key)) {
            Ok(t) => t,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Err(Miss::Absent),
            Err(e) => return Err(Miss::Corrupted(e.to_string())),
        };
        let entry: CacheEntry =
            serde_json::from_str(&text).map_err(|e| Miss::Corrupted(format!("unreadable entry: {e}")))?;
        if entry.key != *key {
            return Err(Miss::Corrupted("entry belongs to a different key".into()));
        }
        if sha256_hex(entry.payload.as_bytes()) != entry.digest {
            return Err(Miss::Corrupted("digest does not match payload".into()));
        }
        serde_json::from_str(&entry.payload).map_err(|e| Miss::Corrupted(format!("unreadable report: {e}")))
    }

    /// Writes through a temporary file so readers never see half an entry.
    pub fn store(&self, key: &CacheKey, report: &RunReport) -> io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let payload = serde_json::to_string(report).map_err(io::Error::other)?;
        let entry = CacheEntry { key: key.clone(), digest: sha256_hex(payload.as_bytes()), payload };
        let path = self.path_for(key);
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        fs::write(&tmp, serde_json::to_string_pretty(&entry).map_err(io::Error::other)?)?;
        fs::rename(&tmp, &path)
    }
}

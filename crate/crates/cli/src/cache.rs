//! On-disk cache of computed artifacts keyed by a content hash.

use std::fs;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::Serialize;
use sha2::{Digest, Sha256};

/// Environment variable overriding the cache directory.
pub const CACHE_ENV: &str = "OPIDENT_CACHE_DIR";

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    /// `explicit`, else `$OPIDENT_CACHE_DIR`, else a directory under the
    /// system temp dir.
    pub fn locate(explicit: Option<&Path>) -> Self {
        let dir = explicit
            .map(Path::to_path_buf)
            .or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from))
            .unwrap_or_else(|| std::env::temp_dir().join("opident-cache"));
        Cache { dir }
    }

    /// Hex SHA-256 over the parts, each length-prefixed so boundaries count.
    pub fn key<S: AsRef<str>>(parts: &[S]) -> String {
        let mut h = Sha256::new();
        for p in parts {
            let b = p.as_ref().as_bytes();
            h.update((b.len() as u64).to_le_bytes());
            h.update(b);
        }
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// The stored value, or `None`. Unreadable entries are deleted with a warning.
    pub fn load<T: DeserializeOwned>(&self, key: &str) -> Option<T> {
        let path = self.path(key);
        let bytes = fs::read(&path).ok()?;
        match serde_json::from_slice(&bytes) {
            Ok(v) => Some(v),
            Err(e) => {
                eprintln!("warning: discarding corrupt cache entry {} ({e})", path.display());
                let _ = fs::remove_file(&path);
                None
            }
        }
    }

    /// Writes atomically via a temporary file; failures only warn.
    pub fn store<T: Serialize>(&self, key: &str, value: &T) {
        let path = self.path(key);
        let tmp = self.dir.join(format!("{key}.tmp"));
        let res = fs::create_dir_all(&self.dir)
            .and_then(|_| fs::write(&tmp, serde_json::to_vec_pretty(value).expect("serialisable")))
            .and_then(|_| fs::rename(&tmp, &path));
        if let Err(e) = res {
            eprintln!("warning: could not write cache entry {}: {e}", path.display());
        }
    }
}

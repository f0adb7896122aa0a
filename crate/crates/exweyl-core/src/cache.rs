//! Versioned on-disk cache.
//!
//! Every artifact is one JSON file wrapped in an envelope carrying a magic
//! string, a schema version, the tool version, and the full cache key
//! (artifact kind, group, seed, and a config string encoding every input
//! that can change the payload). Loading refuses files whose magic or
//! schema do not match; a missing file is a miss, not an error. Writes go
//! through a temporary file and a rename so a crashed run never leaves a
//! half-written artifact behind.

use std::fs;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub const CACHE_MAGIC: &str = "EXWEYL-CACHE";
pub const CACHE_SCHEMA: u32 = 1;

/// Identity of one cached artifact. Two runs with the same key must
/// produce identical payloads, so `config` has to encode every budget,
/// flag, and prime choice that feeds the computation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheKey {
    pub kind: String,
    pub group: String,
    pub seed: u64,
    pub config: String,
}

impl CacheKey {
    pub fn new(
        kind: impl Into<String>,
        group: impl Into<String>,
        seed: u64,
        config: impl Into<String>,
    ) -> CacheKey {
        CacheKey { kind: kind.into(), group: group.into(), seed, config: config.into() }
    }

    /// File name: human-readable prefix plus a hash of the config, so
    /// differing budgets never collide on one path.
    fn file_name(&self) -> String {
        format!(
            "{}-{}-s{}-{:016x}.json",
            self.kind,
            self.group,
            self.seed,
            fnv1a64(self.config.as_bytes())
        )
    }
}

fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

#[derive(Serialize, Deserialize)]
struct Envelope<T> {
    magic: String,
    schema: u32,
    tool_version: String,
    key: CacheKey,
    payload: T,
}

/// A cache directory. Opening creates it.
#[derive(Debug, Clone)]
pub struct CacheStore {
    dir: PathBuf,
}

impl CacheStore {
    pub fn open(dir: impl Into<PathBuf>) -> Result<CacheStore> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(CacheStore { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_of(&self, key: &CacheKey) -> PathBuf {
        self.dir.join(key.file_name())
    }

    /// Load a cached payload. A missing file is `Ok(None)`; anything
    /// present but unusable (bad magic, wrong schema version, key or
    /// payload mismatch, corruption) is an error, never silently ignored.
    pub fn load<T: DeserializeOwned>(&self, key: &CacheKey) -> Result<Option<T>> {
        let path = self.path_of(key);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let env: Envelope<serde_json::Value> = serde_json::from_str(&text)
            .map_err(|e| Error::Cache(format!("{}: not a cache file: {e}", path.display())))?;
        if env.magic != CACHE_MAGIC {
            return Err(Error::Cache(format!(
                "{}: bad magic {:?}",
                path.display(),
                env.magic
            )));
        }
        if env.schema != CACHE_SCHEMA {
            return Err(Error::Cache(format!(
                "{}: refusing schema version {} (this build reads {})",
                path.display(),
                env.schema,
                CACHE_SCHEMA
            )));
        }
        if &env.key != key {
            return Err(Error::Cache(format!(
                "{}: key mismatch: file holds {:?}/{:?} seed {} config {:?}",
                path.display(),
                env.key.kind,
                env.key.group,
                env.key.seed,
                env.key.config
            )));
        }
        let payload = T::deserialize(env.payload).map_err(|e| {
            Error::Cache(format!("{}: payload does not parse: {e}", path.display()))
        })?;
        Ok(Some(payload))
    }

    /// Write a payload under a key, atomically.
    pub fn store<T: Serialize>(&self, key: &CacheKey, payload: &T) -> Result<()> {
        let env = Envelope {
            magic: CACHE_MAGIC.to_string(),
            schema: CACHE_SCHEMA,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            key: key.clone(),
            payload,
        };
        let text = serde_json::to_string_pretty(&env)
            .map_err(|e| Error::Cache(format!("serialize: {e}")))?;
        let path = self.path_of(key);
        let tmp = path.with_extension("json.tmp");
        fs::write(&tmp, text.as_bytes())?;
        fs::rename(&tmp, &path)?;
        Ok(())
    }
}

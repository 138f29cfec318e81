//! Versioned artifact cache for the expensive table builds.
//!
//! A cache entry stores the final serialized artifact (the CSV of a
//! coefficient table, the JSON of a singularity inventory) keyed by a hash
//! of the kind, spectral parameters (bit-exact), and size/smoothing inputs.
//! Replaying the stored bytes is therefore bit-identical to recomputation by
//! construction. Any change to the coefficient recursion or emission formats
//! must bump [`CACHE_VERSION`]; stale versions force a recompute.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const CACHE_VERSION: u32 = 1;

#[derive(Debug, Serialize, Deserialize)]
struct CacheFile {
    version: u32,
    key_desc: String,
    artifact: String,
}

/// Content-addressed key from a canonical description string. Floats enter
/// through their bit patterns so "equal inputs" means bit-equal inputs.
pub struct CacheKey {
    desc: String,
}

impl CacheKey {
    pub fn new(kind: &str) -> Self {
        CacheKey {
            desc: format!("v{CACHE_VERSION}|{kind}"),
        }
    }

    pub fn f64(mut self, name: &str, value: f64) -> Self {
        self.desc.push_str(&format!("|{name}={:016x}", value.to_bits()));
        self
    }

    pub fn u64(mut self, name: &str, value: u64) -> Self {
        self.desc.push_str(&format!("|{name}={value}"));
        self
    }

    pub fn text(mut self, name: &str, value: &str) -> Self {
        self.desc.push_str(&format!("|{name}={value}"));
        self
    }

    fn file_name(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update(self.desc.as_bytes());
        let digest = hasher.finalize();
        let mut hex = String::with_capacity(64);
        for b in digest {
            hex.push_str(&format!("{b:02x}"));
        }
        format!("{hex}.json")
    }

    pub fn describe(&self) -> &str {
        &self.desc
    }
}

/// Looks up a cached artifact; `None` on miss, parse failure, or version
/// mismatch (silent staleness is the failure mode this guards against).
pub fn load(dir: &Path, key: &CacheKey) -> Option<String> {
    let path = dir.join(key.file_name());
    let bytes = fs::read_to_string(&path).ok()?;
    let parsed: CacheFile = serde_json::from_str(&bytes).ok()?;
    if parsed.version != CACHE_VERSION || parsed.key_desc != key.desc {
        return None;
    }
    Some(parsed.artifact)
}

/// Stores an artifact; errors are reported but non-fatal to the caller.
pub fn store(dir: &Path, key: &CacheKey, artifact: &str) -> std::io::Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = dir.join(key.file_name());
    let file = CacheFile {
        version: CACHE_VERSION,
        key_desc: key.desc.clone(),
        artifact: artifact.to_string(),
    };
    fs::write(&path, serde_json::to_string(&file).expect("cache serialization"))?;
    Ok(path)
}

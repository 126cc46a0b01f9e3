//! Run manifests and the content-addressed cache.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const CACHE_ENV: &str = "GRADLAB_CACHE";
pub const DEFAULT_CACHE_DIR: &str = ".gradlab-cache";

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub parameters: Value,
    /// sha256 over the command, normalized presentation and parameters
    pub input_hash: String,
    pub artifact_version: String,
    /// seconds since the Unix epoch; excluded from both hashes
    pub timestamp: u64,
    /// sha256 over the compact serialization of `payload`
    pub payload_hash: String,
    pub payload: Value,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Hash of a command's inputs. `presentation` is the normalized text form.
pub fn input_hash(command: &str, presentation: Option<&str>, parameters: &Value) -> String {
    let key = serde_json::json!({
        "command": command,
        "presentation": presentation,
        "parameters": parameters,
    });
    sha256_hex(key.to_string().as_bytes())
}

impl RunManifest {
    pub fn new(command: &str, presentation: Option<&str>, parameters: Value, payload: Value) -> Self {
        let timestamp = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        RunManifest {
            command: command.into(),
            input_hash: input_hash(command, presentation, &parameters),
            parameters,
            artifact_version: env!("CARGO_PKG_VERSION").into(),
            timestamp,
            payload_hash: sha256_hex(payload.to_string().as_bytes()),
            payload,
        }
    }
}

/// Writes `bytes` to a temporary file beside `path`, then renames it over
/// `path`, so readers never see a partial file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
        _ => PathBuf::from("."),
    };
    fs::create_dir_all(&dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(&dir)?;
    tmp.write_all(bytes)?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

pub fn write_json(path: &Path, value: &impl Serialize) -> std::io::Result<()> {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    write_atomic(path, text.as_bytes())
}

/// The cache directory, or `None` when caching is disabled.
#[derive(Clone, Debug)]
pub struct Cache {
    root: Option<PathBuf>,
}

impl Cache {
    pub fn from_env(disabled: bool) -> Self {
        let root = (!disabled).then(|| {
            std::env::var_os(CACHE_ENV)
                .map(PathBuf::from)
                .unwrap_or_else(|| PathBuf::from(DEFAULT_CACHE_DIR))
        });
        Cache { root }
    }

    fn path(&self, kind: &str, key: &str) -> Option<PathBuf> {
        self.root
            .as_ref()
            .map(|r| r.join(kind).join(format!("{key}.json")))
    }

    pub fn load(&self, kind: &str, key: &str) -> Option<Value> {
        let text = fs::read_to_string(self.path(kind, key)?).ok()?;
        serde_json::from_str(&text).ok()
    }

    /// Best effort: a cache that cannot be written is skipped with a warning.
    pub fn store(&self, kind: &str, key: &str, value: &impl Serialize) {
        if let Some(path) = self.path(kind, key) {
            if let Err(e) = write_json(&path, value) {
                eprintln!("warning: could not write cache entry {}: {e}", path.display());
            }
        }
    }

    pub fn store_manifest(&self, m: &RunManifest) {
        self.store("manifests", &m.input_hash, m);
    }
}

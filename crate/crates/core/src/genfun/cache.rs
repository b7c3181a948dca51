//! Memoization of symmetric functions, in memory and optionally on disk.
//!
//! Disk entries live under a directory as `<sha256(key)>.json` and are
//! written through a temporary file followed by a rename, so concurrent
//! readers never observe a partial file.

use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::sym::SymPoly;
use super::GenfunError;

pub struct Cache {
    enabled: bool,
    dir: Option<PathBuf>,
    mem: RwLock<HashMap<String, Arc<SymPoly>>>,
    write_lock: Mutex<()>,
}

#[derive(Serialize, Deserialize)]
struct DiskEntry {
    key: String,
    value: serde_json::Value,
}

impl Cache {
    pub fn new(dir: Option<PathBuf>) -> Self {
        Cache { enabled: true, dir, mem: RwLock::new(HashMap::new()), write_lock: Mutex::new(()) }
    }

    /// A cache that stores nothing; every lookup recomputes.
    pub fn disabled() -> Self {
        Cache { enabled: false, ..Cache::new(None) }
    }

    pub fn is_enabled(&self) -> bool {
        self.enabled
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    pub fn len(&self) -> usize {
        self.mem.read().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn clear_memory(&self) {
        self.mem.write().expect("cache lock").clear();
    }

    fn path_for(&self, key: &str) -> Option<PathBuf> {
        let dir = self.dir.as_ref()?;
        let digest = Sha256::digest(key.as_bytes());
        Some(dir.join(format!("{}.json", hex::encode(digest))))
    }

    pub fn get(&self, key: &str) -> Option<Arc<SymPoly>> {
        if !self.enabled {
            return None;
        }
        if let Some(v) = self.mem.read().expect("cache lock").get(key) {
            return Some(Arc::clone(v));
        }
        let v = Arc::new(self.read_disk(key)?);
        self.mem.write().expect("cache lock").insert(key.to_string(), Arc::clone(&v));
        Some(v)
    }

    fn read_disk(&self, key: &str) -> Option<SymPoly> {
        let text = fs::read_to_string(self.path_for(key)?).ok()?;
        let entry: DiskEntry = serde_json::from_str(&text).ok()?;
        if entry.key != key {
            return None;
        }
        SymPoly::from_json_value(entry.value).ok()
    }

    pub fn insert(&self, key: &str, value: SymPoly) -> Result<Arc<SymPoly>, GenfunError> {
        let v = Arc::new(value);
        if !self.enabled {
            return Ok(v);
        }
        if let Some(path) = self.path_for(key) {
            self.write_disk(&path, key, &v)?;
        }
        self.mem.write().expect("cache lock").insert(key.to_string(), Arc::clone(&v));
        Ok(v)
    }

    fn write_disk(&self, path: &Path, key: &str, v: &SymPoly) -> Result<(), GenfunError> {
        let io = |e: std::io::Error| GenfunError::Cache(e.to_string());
        let dir = path.parent().expect("cache file has a parent");
        let _guard = self.write_lock.lock().expect("cache write lock");
        fs::create_dir_all(dir).map_err(io)?;
        let entry = DiskEntry { key: key.to_string(), value: v.to_json_value() };
        let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
        serde_json::to_writer(&mut tmp, &entry).map_err(|e| GenfunError::Cache(e.to_string()))?;
        tmp.flush().map_err(io)?;
        tmp.persist(path).map_err(|e| io(e.error))?;
        Ok(())
    }

    pub fn get_or_compute<F>(&self, key: &str, f: F) -> Result<Arc<SymPoly>, GenfunError>
    where
        F: FnOnce() -> Result<SymPoly, GenfunError>,
    {
        if let Some(v) = self.get(key) {
            return Ok(v);
        }
        self.insert(key, f()?)
    }
}

fn slot() -> &'static RwLock<Arc<Cache>> {
    static SLOT: OnceLock<RwLock<Arc<Cache>>> = OnceLock::new();
    SLOT.get_or_init(|| {
        let dir = std::env::var_os("KSHIFT_CACHE_DIR").filter(|d| !d.is_empty()).map(PathBuf::from);
        RwLock::new(Arc::new(Cache::new(dir)))
    })
}

/// The process-wide cache. Initialized from `KSHIFT_CACHE_DIR` on first use.
pub fn global() -> Arc<Cache> {
    Arc::clone(&slot().read().expect("cache slot"))
}

/// Replaces the process-wide cache.
pub fn configure(cache: Cache) {
    *slot().write().expect("cache slot") = Arc::new(cache);
}

//! Append-only JSON-lines store of exact values keyed by canonical keys.
//!
//! Each line is `{"key": "...", "value": "p/q", "version": 1}`. The latest
//! line for a key wins. Unparseable lines are skipped with a warning and
//! records with another version are ignored. The file stays exclusively
//! locked while a [`ExactCache`] is open.

use std::collections::HashMap;
use std::fs::{File, OpenOptions, TryLockError};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::nodal::CacheStats;
use crate::{format_rational, parse_rational, ExactRational};

pub const CACHE_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheRecord {
    pub key: String,
    pub value: String,
    pub version: u32,
}

impl CacheRecord {
    pub fn new(key: &str, value: &ExactRational) -> Self {
        Self {
            key: key.to_owned(),
            value: format_rational(value),
            version: CACHE_VERSION,
        }
    }

    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("cache record serializes")
    }
}

/// Somewhere exact values can be looked up and recorded by canonical key.
pub trait ValueStore: Send + Sync + std::fmt::Debug {
    fn lookup(&self, key: &str) -> Option<ExactRational>;
    fn record(&self, key: &str, value: &ExactRational);
}

#[derive(Debug)]
struct Inner {
    file: File,
    values: HashMap<String, ExactRational>,
    stats: CacheStats,
    write_error: Option<std::io::Error>,
}

#[derive(Debug)]
pub struct ExactCache {
    path: PathBuf,
    inner: Mutex<Inner>,
}

impl ExactCache {
    /// Opens (creating if needed) and locks the cache file. Fails fast with
    /// [`Error::CacheLocked`] when another handle holds the lock.
    pub fn open(path: &Path) -> Result<Self> {
        let file = OpenOptions::new()
            .read(true)
            .append(true)
            .create(true)
            .open(path)?;
        match file.try_lock() {
            Ok(()) => {}
            Err(TryLockError::WouldBlock) => {
                return Err(Error::CacheLocked {
                    path: path.display().to_string(),
                })
            }
            Err(TryLockError::Error(e)) => return Err(e.into()),
        }
        let mut values = HashMap::new();
        let mut torn_tail = false;
        let reader = BufReader::new(File::open(path)?);
        for (idx, line) in reader.split(b'\n').enumerate() {
            let bytes = line?;
            let line = String::from_utf8_lossy(&bytes);
            torn_tail = false;
            if line.trim().is_empty() {
                continue;
            }
            let record: CacheRecord = match serde_json::from_str(&line) {
                Ok(r) => r,
                Err(e) => {
                    log::warn!("{}: skipping corrupt line {}: {e}", path.display(), idx + 1);
                    torn_tail = true;
                    continue;
                }
            };
            if record.version != CACHE_VERSION {
                log::warn!(
                    "{}: ignoring `{}` stored with version {}",
                    path.display(),
                    record.key,
                    record.version
                );
                values.remove(&record.key);
                continue;
            }
            match parse_rational(&record.value) {
                Ok(v) => {
                    values.insert(record.key, v);
                }
                Err(e) => log::warn!("{}: skipping line {}: {e}", path.display(), idx + 1),
            }
        }
        let mut file = file;
        if torn_tail {
            // start the next record on a fresh line
            writeln!(file)?;
        }
        Ok(Self {
            path: path.to_owned(),
            inner: Mutex::new(Inner {
                file,
                values,
                stats: CacheStats::default(),
                write_error: None,
            }),
        })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn get(&self, key: &str) -> Option<ExactRational> {
        let mut inner = self.inner.lock().unwrap();
        let found = inner.values.get(key).cloned();
        match found {
            Some(_) => inner.stats.hits += 1,
            None => inner.stats.misses += 1,
        }
        found
    }

    pub fn put(&self, record: &CacheRecord) -> Result<()> {
        let value = parse_rational(&record.value)?;
        let mut inner = self.inner.lock().unwrap();
        writeln!(inner.file, "{}", record.to_line())?;
        inner.file.flush()?;
        inner.values.insert(record.key.clone(), value);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.inner.lock().unwrap().values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn stats(&self) -> CacheStats {
        self.inner.lock().unwrap().stats
    }

    /// First write failure seen through the [`ValueStore`] interface, if any.
    pub fn take_write_error(&self) -> Option<std::io::Error> {
        self.inner.lock().unwrap().write_error.take()
    }
}

impl ValueStore for ExactCache {
    fn lookup(&self, key: &str) -> Option<ExactRational> {
        self.get(key)
    }

    fn record(&self, key: &str, value: &ExactRational) {
        if let Err(e) = self.put(&CacheRecord::new(key, value)) {
            let mut inner = self.inner.lock().unwrap();
            if inner.write_error.is_none() {
                inner.write_error = Some(match e {
                    Error::Io(io) => io,
                    other => std::io::Error::other(other.to_string()),
                });
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> ExactRational {
        ExactRational::from_integer(v.into())
    }

    #[test]
    fn put_then_get() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.jsonl");
        let cache = ExactCache::open(&path).unwrap();
        assert_eq!(cache.get("a"), None);
        cache
            .put(&CacheRecord::new(
                "a",
                &ExactRational::new(3.into(), 4.into()),
            ))
            .unwrap();
        assert_eq!(cache.get("a"), Some(ExactRational::new(3.into(), 4.into())));
        assert_eq!(cache.stats(), CacheStats { hits: 1, misses: 1 });
    }

    #[test]
    fn later_value_wins_across_reopen() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.jsonl");
        {
            let cache = ExactCache::open(&path).unwrap();
            cache.put(&CacheRecord::new("k", &int(1))).unwrap();
            cache.put(&CacheRecord::new("k", &int(2))).unwrap();
            assert_eq!(cache.get("k"), Some(int(2)));
        }
        let cache = ExactCache::open(&path).unwrap();
        assert_eq!(cache.get("k"), Some(int(2)));
    }

    #[test]
    fn corrupt_tail_and_old_versions_are_skipped() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.jsonl");
        let good = CacheRecord::new("good", &int(5)).to_line();
        let old = r#"{"key":"old","value":"7","version":0}"#;
        std::fs::write(&path, format!("{good}\n{old}\n{{\"key\":\"torn\",\"va")).unwrap();
        let cache = ExactCache::open(&path).unwrap();
        assert_eq!(cache.get("good"), Some(int(5)));
        assert_eq!(cache.get("old"), None);
        assert_eq!(cache.get("torn"), None);
        cache.put(&CacheRecord::new("after", &int(9))).unwrap();
        drop(cache);
        let cache = ExactCache::open(&path).unwrap();
        assert_eq!(cache.get("after"), Some(int(9)));
    }

    #[test]
    fn second_handle_fails_fast() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.jsonl");
        let _first = ExactCache::open(&path).unwrap();
        match ExactCache::open(&path) {
            Err(Error::CacheLocked { .. }) => {}
            other => panic!("expected lock error, got {other:?}"),
        }
    }

    #[test]
    fn record_lines_are_byte_stable() {
        let rec = CacheRecord::new(
            "v1|cr1|3|2|2,2,2,2,2,2,2|",
            &ExactRational::new((-6).into(), 4.into()),
        );
        assert_eq!(
            rec.to_line(),
            r#"{"key":"v1|cr1|3|2|2,2,2,2,2,2,2|","value":"-3/2","version":1}"#
        );
        let back: CacheRecord = serde_json::from_str(&rec.to_line()).unwrap();
        assert_eq!(back.to_line(), rec.to_line());
    }
}

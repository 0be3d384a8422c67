use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::fs::{File, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Mutex;
use std::time::{SystemTime, UNIX_EPOCH};

/// Identifies one command invocation. Two keys are equal exactly when
/// the command, its arguments and every result-affecting setting agree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StoreKey {
    pub command: String,
    pub params: Value,
    pub engine: String,
    pub precision: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StoreEntry {
    pub key: StoreKey,
    /// The JSONL output of the command, replayed verbatim on a hit.
    pub payload: String,
    /// Seconds since the Unix epoch. Never part of any payload.
    pub created_at: u64,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct StoreStats {
    pub hits: u64,
    pub misses: u64,
    pub appended: u64,
}

#[derive(Debug)]
struct Inner {
    entries: Vec<StoreEntry>,
    stats: StoreStats,
    file: File,
}

/// Append-only JSONL result store. All appends go through one lock, so a
/// store shared between threads has a single writer.
#[derive(Debug)]
pub struct Store {
    path: PathBuf,
    inner: Mutex<Inner>,
}

/// Parses store text, naming the first bad line.
pub fn parse_entries(text: &str) -> Result<Vec<StoreEntry>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| serde_json::from_str(l).map_err(|e| Error::Parse(format!("store line {}: {e}", i + 1))))
        .collect()
}

impl Store {
    pub fn open(path: &Path) -> Result<Store> {
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir).map_err(|e| Error::Io(format!("creating {}: {e}", dir.display())))?;
        }
        let entries = match std::fs::read_to_string(path) {
            Ok(text) => parse_entries(&text)?,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Vec::new(),
            Err(e) => return Err(Error::Io(format!("reading {}: {e}", path.display()))),
        };
        let file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .map_err(|e| Error::Io(format!("opening {}: {e}", path.display())))?;
        Ok(Store {
            path: path.to_path_buf(),
            inner: Mutex::new(Inner {
                entries,
                stats: StoreStats::default(),
                file,
            }),
        })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    fn lock(&self) -> std::sync::MutexGuard<'_, Inner> {
        self.inner.lock().unwrap_or_else(|e| e.into_inner())
    }

    /// The most recent payload stored under `key`.
    pub fn get(&self, key: &StoreKey) -> Option<String> {
        let mut g = self.lock();
        let found = g
            .entries
            .iter()
            .rev()
            .find(|e| &e.key == key)
            .map(|e| e.payload.clone());
        if found.is_some() {
            g.stats.hits += 1;
        } else {
            g.stats.misses += 1;
        }
        found
    }

    pub fn append(&self, key: StoreKey, payload: String) -> Result<()> {
        let created_at = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
        let entry = StoreEntry {
            key,
            payload,
            created_at,
        };
        let mut line = serde_json::to_string(&entry)?;
        line.push('\n');
        let mut g = self.lock();
        g.file.write_all(line.as_bytes())?;
        g.file.flush()?;
        g.entries.push(entry);
        g.stats.appended += 1;
        Ok(())
    }

    pub fn entries(&self) -> Vec<StoreEntry> {
        self.lock().entries.clone()
    }

    pub fn stats(&self) -> StoreStats {
        self.lock().stats
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn key(n: u32) -> StoreKey {
        StoreKey {
            command: "compute".into(),
            params: serde_json::json!({ "p": n }),
            engine: "auto".into(),
            precision: 64,
        }
    }

    #[test]
    fn replay_is_verbatim() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("sub").join("store.jsonl");
        let payload = "{\"x\":\"1.50000\"}\n{\"y\":null}\n".to_string();
        {
            let s = Store::open(&path).unwrap();
            assert_eq!(s.get(&key(7)), None);
            s.append(key(7), payload.clone()).unwrap();
            assert_eq!(
                s.stats(),
                StoreStats {
                    hits: 0,
                    misses: 1,
                    appended: 1
                }
            );
        }
        let s = Store::open(&path).unwrap();
        assert_eq!(s.get(&key(7)), Some(payload));
        assert_eq!(s.get(&key(11)), None);
        assert_eq!(
            s.stats(),
            StoreStats {
                hits: 1,
                misses: 1,
                appended: 0
            }
        );
        assert_eq!(s.entries().len(), 1);
    }

    #[test]
    fn bad_line_is_named() {
        let e = parse_entries("\n{oops}\n").unwrap_err();
        assert!(e.to_string().contains("store line 2"), "{e}");
    }
}

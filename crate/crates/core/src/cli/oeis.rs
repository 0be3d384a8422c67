//! b-file client with an on-disk cache and an offline mode.

use crate::error::{Error, Result};
use crate::harness::parse_bfile;
use num_bigint::BigInt;
use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, OnceLock};
use std::time::Duration;

/// Shipped copy of the A277445 b-file, used in offline mode on a cold cache.
pub const A277445_FIXTURE: &str = include_str!("../../fixtures/b277445.txt");

const TIMEOUT: Duration = Duration::from_secs(20);

/// Where a b-file came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Origin {
    Fixture,
    Cache,
    Builtin,
    Network,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BFile {
    pub id: String,
    pub terms: Vec<(u64, BigInt)>,
    pub origin: Origin,
}

/// Checks `A` followed by exactly six digits.
pub fn validate_id(id: &str) -> Result<()> {
    let ok = id.len() == 7 && id.starts_with('A') && id[1..].bytes().all(|b| b.is_ascii_digit());
    if ok {
        Ok(())
    } else {
        Err(Error::Param(format!(
            "{id:?} is not an OEIS A-number (expected A followed by six digits)"
        )))
    }
}

fn builtin(id: &str) -> Option<&'static str> {
    (id == "A277445").then_some(A277445_FIXTURE)
}

#[derive(Clone, Debug)]
pub struct OeisClient {
    pub cache_dir: PathBuf,
    pub offline: bool,
}

fn id_lock(id: &str) -> Arc<Mutex<()>> {
    static LOCKS: OnceLock<Mutex<HashMap<String, Arc<Mutex<()>>>>> = OnceLock::new();
    let mut map = LOCKS
        .get_or_init(Default::default)
        .lock()
        .unwrap_or_else(|e| e.into_inner());
    map.entry(id.to_string()).or_default().clone()
}

impl OeisClient {
    pub fn new(cache_dir: impl Into<PathBuf>, offline: bool) -> OeisClient {
        OeisClient {
            cache_dir: cache_dir.into(),
            offline,
        }
    }

    pub fn cache_path(&self, id: &str) -> PathBuf {
        self.cache_dir.join("oeis").join(format!("b{}.txt", &id[1..]))
    }

    fn cached(&self, id: &str) -> Result<Option<BFile>> {
        match std::fs::read_to_string(self.cache_path(id)) {
            Ok(text) => Ok(Some(BFile {
                id: id.into(),
                terms: parse_bfile(&text)?,
                origin: Origin::Cache,
            })),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
            Err(e) => Err(Error::Network(format!("reading cache for {id}: {e}"))),
        }
    }

    /// Resolves `id` from an explicit fixture file, then the cache, then
    /// (offline) the shipped fixture or (online) the network.
    pub fn fetch(&self, id: &str, fixture: Option<&Path>) -> Result<BFile> {
        validate_id(id)?;
        if let Some(path) = fixture {
            let text =
                std::fs::read_to_string(path).map_err(|e| Error::Io(format!("reading {}: {e}", path.display())))?;
            return Ok(BFile {
                id: id.into(),
                terms: parse_bfile(&text)?,
                origin: Origin::Fixture,
            });
        }
        if let Some(b) = self.cached(id)? {
            return Ok(b);
        }
        if self.offline {
            return match builtin(id) {
                Some(text) => Ok(BFile {
                    id: id.into(),
                    terms: parse_bfile(text)?,
                    origin: Origin::Builtin,
                }),
                None => Err(Error::Network(format!("offline and no cached b-file for {id}"))),
            };
        }
        let lock = id_lock(id);
        let _guard = lock.lock().unwrap_or_else(|e| e.into_inner());
        // Another thread may have filled the cache while we waited.
        if let Some(b) = self.cached(id)? {
            return Ok(b);
        }
        let text = download(id)?;
        let terms = parse_bfile(&text)?;
        let path = self.cache_path(id);
        if let Some(dir) = path.parent() {
            std::fs::create_dir_all(dir).map_err(|e| Error::Network(format!("creating cache: {e}")))?;
        }
        std::fs::write(&path, &text).map_err(|e| Error::Network(format!("writing cache: {e}")))?;
        Ok(BFile {
            id: id.into(),
            terms,
            origin: Origin::Network,
        })
    }
}

fn download(id: &str) -> Result<String> {
    let url = format!("https://oeis.org/{id}/b{}.txt", &id[1..]);
    let agent: ureq::Agent = ureq::Agent::config_builder()
        .timeout_global(Some(TIMEOUT))
        .build()
        .into();
    let mut resp = agent
        .get(&url)
        .call()
        .map_err(|e| Error::Network(format!("GET {url}: {e}")))?;
    resp.body_mut()
        .read_to_string()
        .map_err(|e| Error::Network(format!("reading {url}: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids() {
        assert!(validate_id("A277445").is_ok());
        for bad in ["X123", "A27744", "A2774455", "a277445", "A27744x"] {
            assert!(matches!(validate_id(bad), Err(Error::Param(_))), "{bad}");
        }
    }

    #[test]
    fn offline_resolution() {
        let dir = tempfile::tempdir().unwrap();
        let c = OeisClient::new(dir.path(), true);
        let b = c.fetch("A277445", None).unwrap();
        assert_eq!(b.origin, Origin::Builtin);
        assert!((1..=11).all(|n| b.terms.iter().any(|t| t.0 == n)));
        assert!(matches!(c.fetch("A000045", None), Err(Error::Network(_))));

        std::fs::create_dir_all(dir.path().join("oeis")).unwrap();
        std::fs::write(c.cache_path("A000045"), "0 0\n1 1\n2 1\n").unwrap();
        let b = c.fetch("A000045", None).unwrap();
        assert_eq!((b.origin, b.terms.len()), (Origin::Cache, 3));

        let bad = dir.path().join("bad.txt");
        std::fs::write(&bad, "1 1\n2 two\n").unwrap();
        let e = c.fetch("A277445", Some(&bad)).unwrap_err();
        assert!(e.to_string().contains("line 2"));
    }
}

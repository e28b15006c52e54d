//! Append-only NDJSON store of computed counts.
//!
//! The first line is a header `{"format":"mapenum-counts","version":1}`; each
//! following line is one [`CountRecord`].

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{CountRecord, RecordKey};
use crate::error::{Error, Result};

pub const FORMAT: &str = "mapenum-counts";
pub const VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct Header {
    format: String,
    version: u32,
}

#[derive(Debug)]
pub struct Cache {
    path: PathBuf,
    entries: HashMap<RecordKey, BigInt>,
    exists: bool,
}

fn err(path: &Path, e: impl std::fmt::Display) -> Error {
    Error::Cache(format!("{}: {e}", path.display()))
}

impl Cache {
    /// Loads the file if it exists; a missing file is an empty cache.
    pub fn open(path: impl Into<PathBuf>) -> Result<Self> {
        let path = path.into();
        let mut cache = Cache { path: path.clone(), entries: HashMap::new(), exists: false };
        let file = match File::open(&path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(cache),
            Err(e) => return Err(err(&path, e)),
        };
        cache.exists = true;
        let mut lines = BufReader::new(file).lines();
        match lines.next() {
            None => return Ok(cache),
            Some(line) => {
                let line = line.map_err(|e| err(&path, e))?;
                let h: Header = serde_json::from_str(&line).map_err(|e| err(&path, format!("bad header: {e}")))?;
                if h.format != FORMAT || h.version != VERSION {
                    return Err(err(&path, format!("unsupported format {} v{}", h.format, h.version)));
                }
            }
        }
        for (k, line) in lines.enumerate() {
            let line = line.map_err(|e| err(&path, e))?;
            if line.trim().is_empty() {
                continue;
            }
            let r: CountRecord = serde_json::from_str(&line).map_err(|e| err(&path, format!("line {}: {e}", k + 2)))?;
            cache.insert_checked(r)?;
        }
        Ok(cache)
    }

    fn insert_checked(&mut self, r: CountRecord) -> Result<bool> {
        let key = r.key();
        match self.entries.get(&key) {
            Some(v) if *v == r.value => Ok(false),
            Some(v) => Err(err(&self.path, format!("conflicting values {v} and {} for {key:?}", r.value))),
            None => {
                self.entries.insert(key, r.value);
                Ok(true)
            }
        }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// All requested records, or `None` if any is missing.
    pub fn lookup(&self, keys: &[RecordKey]) -> Option<Vec<CountRecord>> {
        keys.iter()
            .map(|k| {
                self.entries.get(k).map(|v| CountRecord {
                    model: k.0,
                    n: k.1,
                    g2: k.2,
                    indices: k.3.clone(),
                    value: v.clone(),
                })
            })
            .collect()
    }

    /// Appends the records not stored yet.
    pub fn store(&mut self, records: &[CountRecord]) -> Result<usize> {
        let mut fresh = Vec::new();
        for r in records {
            if self.insert_checked(r.clone())? {
                fresh.push(r);
            }
        }
        if fresh.is_empty() {
            return Ok(0);
        }
        if let Some(dir) = self.path.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir).map_err(|e| err(&self.path, e))?;
        }
        let mut f = OpenOptions::new().create(true).append(true).open(&self.path).map_err(|e| err(&self.path, e))?;
        let mut buf = String::new();
        if !self.exists || f.metadata().map(|m| m.len() == 0).unwrap_or(false) {
            buf += &serde_json::to_string(&Header { format: FORMAT.into(), version: VERSION }).expect("header");
            buf.push('\n');
            self.exists = true;
        }
        for r in &fresh {
            buf += &serde_json::to_string(r).expect("record serializes");
            buf.push('\n');
        }
        f.write_all(buf.as_bytes()).map_err(|e| err(&self.path, e))?;
        Ok(fresh.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::CountModel;

    fn rec(n: u32, v: i64) -> CountRecord {
        CountRecord { model: CountModel::Maps, n, g2: 0, indices: None, value: v.into() }
    }

    #[test]
    fn store_and_reload() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.ndjson");
        let mut c = Cache::open(&path).unwrap();
        assert_eq!(c.store(&[rec(1, 2), rec(2, 9)]).unwrap(), 2);
        assert_eq!(c.store(&[rec(2, 9)]).unwrap(), 0);
        let c = Cache::open(&path).unwrap();
        assert_eq!(c.len(), 2);
        let keys = vec![rec(2, 0).key()];
        assert_eq!(c.lookup(&keys).unwrap()[0].value, 9.into());
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.starts_with("{\"format\":\"mapenum-counts\",\"version\":1}\n"));
    }

    #[test]
    fn conflicts_are_errors() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.ndjson");
        let mut c = Cache::open(&path).unwrap();
        c.store(&[rec(1, 2)]).unwrap();
        assert!(matches!(c.store(&[rec(1, 3)]), Err(Error::Cache(_))));
        std::fs::write(&path, "{\"format\":\"other\",\"version\":1}\n").unwrap();
        assert!(Cache::open(&path).is_err());
    }
}

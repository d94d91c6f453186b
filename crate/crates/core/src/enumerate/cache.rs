//! Append-only JSON-lines cache of avoider counts.

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheRecord {
    pub patterns: String,
    pub n: usize,
    pub count: u64,
    pub engine_version: String,
}

#[derive(Debug)]
pub struct CountCache {
    path: PathBuf,
    rows: Mutex<BTreeMap<(String, usize), u64>>,
}

impl CountCache {
    /// Opens (or lazily creates) the cache at `path`. Unreadable lines are skipped.
    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref().to_path_buf();
        let mut rows = BTreeMap::new();
        match File::open(&path) {
            Ok(file) => {
                for (lineno, line) in BufReader::new(file).lines().enumerate() {
                    let line = line.map_err(|source| io_err(&path, source))?;
                    if line.trim().is_empty() {
                        continue;
                    }
                    match serde_json::from_str::<CacheRecord>(&line) {
                        Ok(rec) if rec.engine_version == ENGINE_VERSION => {
                            rows.insert((rec.patterns, rec.n), rec.count);
                        }
                        Ok(rec) => log::debug!(
                            "{}:{}: ignoring row from engine {}",
                            path.display(),
                            lineno + 1,
                            rec.engine_version
                        ),
                        Err(e) => log::warn!("{}:{}: skipping corrupt cache line: {e}", path.display(), lineno + 1),
                    }
                }
            }
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => {}
            Err(e) => return Err(io_err(&path, e)),
        }
        Ok(CountCache { path, rows: Mutex::new(rows) })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn get(&self, key: &str, n: usize) -> Option<u64> {
        self.rows.lock().unwrap().get(&(key.to_string(), n)).copied()
    }

    /// Records a count, appending to the file only when the row is new.
    pub fn insert(&self, key: &str, n: usize, count: u64) -> Result<()> {
        let mut rows = self.rows.lock().unwrap();
        if rows.get(&(key.to_string(), n)) == Some(&count) {
            return Ok(());
        }
        let rec = CacheRecord { patterns: key.to_string(), n, count, engine_version: ENGINE_VERSION.to_string() };
        let mut file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)
            .map_err(|e| io_err(&self.path, e))?;
        let line = serde_json::to_string(&rec).expect("record serializes");
        writeln!(file, "{line}").map_err(|e| io_err(&self.path, e))?;
        rows.insert((rec.patterns, n), count);
        Ok(())
    }

    pub fn records(&self) -> Vec<CacheRecord> {
        self.rows
            .lock()
            .unwrap()
            .iter()
            .map(|((patterns, n), &count)| CacheRecord {
                patterns: patterns.clone(),
                n: *n,
                count,
                engine_version: ENGINE_VERSION.to_string(),
            })
            .collect()
    }

    pub fn len(&self) -> usize {
        self.rows.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn clear(&self) -> Result<()> {
        let mut rows = self.rows.lock().unwrap();
        File::create(&self.path).map_err(|e| io_err(&self.path, e))?;
        rows.clear();
        Ok(())
    }
}

fn io_err(path: &Path, source: std::io::Error) -> Error {
    Error::CacheIo { path: path.display().to_string(), source }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn persists_and_skips_corrupt_lines() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("counts.jsonl");
        {
            let cache = CountCache::open(&path).unwrap();
            assert!(cache.is_empty());
            cache.insert("2 #1 1", 5, 8).unwrap();
            cache.insert("2 #1 1", 5, 8).unwrap();
            cache.insert("21", 3, 1).unwrap();
        }
        let mut text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text.lines().count(), 2);
        text.push_str("{not json\n");
        text.push_str("{\"patterns\":\"12\",\"n\":2,\"count\":1,\"engine_version\":\"0.0.0-old\"}\n");
        std::fs::write(&path, text).unwrap();

        let cache = CountCache::open(&path).unwrap();
        assert_eq!(cache.len(), 2);
        assert_eq!(cache.get("2 #1 1", 5), Some(8));
        assert_eq!(cache.get("12", 2), None);
        cache.clear().unwrap();
        assert!(CountCache::open(&path).unwrap().is_empty());
    }
}

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use hurwitz_core::branch::BranchDatum;
use serde::{Deserialize, Serialize};

use crate::CliError;

/// Entries written under another version are ignored on load.
pub const CACHE_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub datum: BranchDatum,
    pub method: String,
    pub nu: Option<u64>,
    pub convention: Option<String>,
    pub version: u32,
}

type Key = (String, String, Option<String>);

/// Append-only JSONL store. Later lines win.
pub struct Cache {
    path: PathBuf,
    entries: HashMap<Key, Option<u64>>,
    pending: Vec<CacheEntry>,
    pub hits: usize,
}

fn key(datum: &BranchDatum, method: &str, convention: Option<&str>) -> Key {
    (datum.canonical_key(), method.to_string(), convention.map(str::to_string))
}

impl Cache {
    pub fn open(path: &Path) -> Result<Self, CliError> {
        let io = |source| CliError::Cache {
            path: path.to_path_buf(),
            source,
        };
        let mut entries = HashMap::new();
        match File::open(path) {
            Ok(f) => {
                for (i, line) in BufReader::new(f).lines().enumerate() {
                    let line = line.map_err(io)?;
                    if line.trim().is_empty() {
                        continue;
                    }
                    let e: CacheEntry = serde_json::from_str(&line).map_err(|e| CliError::CacheFormat {
                        path: path.to_path_buf(),
                        line: i + 1,
                        message: e.to_string(),
                    })?;
                    if e.version == CACHE_VERSION {
                        entries.insert(key(&e.datum, &e.method, e.convention.as_deref()), e.nu);
                    }
                }
            }
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => {}
            Err(e) => return Err(io(e)),
        }
        Ok(Cache {
            path: path.to_path_buf(),
            entries,
            pending: Vec::new(),
            hits: 0,
        })
    }

    pub fn get(&mut self, datum: &BranchDatum, method: &str, convention: Option<&str>) -> Option<Option<u64>> {
        let hit = self.entries.get(&key(datum, method, convention)).copied();
        self.hits += usize::from(hit.is_some());
        hit
    }

    pub fn put(&mut self, datum: &BranchDatum, method: &str, convention: Option<&str>, nu: Option<u64>) {
        self.entries.insert(key(datum, method, convention), nu);
        self.pending.push(CacheEntry {
            datum: datum.clone(),
            method: method.to_string(),
            nu,
            convention: convention.map(str::to_string),
            version: CACHE_VERSION,
        });
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Appends the entries added since opening.
    pub fn flush(&mut self) -> Result<(), CliError> {
        if self.pending.is_empty() {
            return Ok(());
        }
        let io = |source| CliError::Cache {
            path: self.path.clone(),
            source,
        };
        let file = OpenOptions::new().create(true).append(true).open(&self.path).map_err(io)?;
        let mut w = BufWriter::new(file);
        for e in &self.pending {
            let line = serde_json::to_string(e).expect("cache entries serialize");
            writeln!(w, "{line}").map_err(io)?;
        }
        w.flush().map_err(io)?;
        self.pending.clear();
        Ok(())
    }
}

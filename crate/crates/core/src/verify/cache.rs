// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{brute_chromatic_index, brute_total_chromatic, canonical_graph6, OracleError};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleEntry {
    pub n: usize,
    pub max_degree: usize,
    pub total_chromatic: usize,
    pub chromatic_index: usize,
}

/// Oracle results keyed by canonical graph6, persisted as JSON.
#[derive(Debug, Default)]
pub struct OracleCache {
    path: Option<PathBuf>,
    entries: BTreeMap<String, OracleEntry>,
    dirty: bool,
}

impl OracleCache {
    pub fn in_memory() -> Self {
        OracleCache::default()
    }

    /// Opens (or starts) a cache file. A missing file is an empty cache.
    pub fn open(path: impl AsRef<Path>) -> std::io::Result<Self> {
        let path = path.as_ref().to_path_buf();
        let entries = match std::fs::read(&path) {
            Ok(bytes) => serde_json::from_slice(&bytes)
                .map_err(|e| std::io::Error::new(std::io::ErrorKind::InvalidData, e))?,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => BTreeMap::new(),
            Err(e) => return Err(e),
        };
        Ok(OracleCache {
            path: Some(path),
            entries,
            dirty: false,
        })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, g: &Graph) -> Option<OracleEntry> {
        self.entries.get(&canonical_graph6(g)).copied()
    }

    pub fn lookup(&mut self, g: &Graph) -> Result<OracleEntry, OracleError> {
        let key = canonical_graph6(g);
        if let Some(e) = self.entries.get(&key) {
            return Ok(*e);
        }
        let entry = OracleEntry {
            n: g.n(),
            max_degree: g.max_degree(),
            total_chromatic: brute_total_chromatic(g)?,
            chromatic_index: brute_chromatic_index(&g.to_multigraph())?,
        };
        self.entries.insert(key, entry);
        self.dirty = true;
        Ok(entry)
    }

    pub fn save(&mut self) -> std::io::Result<()> {
        if let (Some(p), true) = (&self.path, self.dirty) {
            let s = serde_json::to_string_pretty(&self.entries).expect("entries serialize");
            std::fs::write(p, s)?;
            self.dirty = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isomorphic_graphs_share_entries() {
        let mut cache = OracleCache::in_memory();
        let e = cache.lookup(&Graph::path(4)).unwrap();
        assert_eq!(e.total_chromatic, 3);
        let relabeled = Graph::path(4).permuted(&[2, 0, 3, 1]);
        assert_eq!(cache.get(&relabeled), Some(e));
        assert_eq!(cache.len(), 1);
    }

    #[test]
    fn persists_to_disk() {
        let dir = std::env::temp_dir().join(format!("tc-oracle-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("cache.json");
        let mut c = OracleCache::open(&path).unwrap();
        c.lookup(&Graph::complete(4)).unwrap();
        c.save().unwrap();
        let c2 = OracleCache::open(&path).unwrap();
        assert_eq!(c2.get(&Graph::complete(4)).unwrap().total_chromatic, 5);
        std::fs::remove_dir_all(dir).unwrap();
    }
}

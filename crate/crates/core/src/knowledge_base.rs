//! File-backed store of the best route found per topology and endpoint pair.
//!
//! The store is an append log, one `kb` record per line. Reading compacts it
//! so that each `(fingerprint, source, dest)` key resolves to its widest
//! recorded path; a new record is only appended when it beats that path.

use std::collections::BTreeMap;
use std::fs::{self, OpenOptions};
use std::hash::Hasher;
use std::io::Write;
use std::path::Path;

use fnv::FnvHasher;
use thiserror::Error;

use crate::graph::NodeId;

#[derive(Debug, Error, PartialEq)]
pub enum KbError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("{path} line {line}: {message}")]
    Corrupt { path: String, line: usize, message: String },
    #[error("invalid entry: {0}")]
    InvalidEntry(String),
}

/// 64-bit FNV-1a over raw bytes.
pub fn fingerprint_bytes(bytes: &[u8]) -> u64 {
    let mut h = FnvHasher::default();
    h.write(bytes);
    h.finish()
}

#[derive(Debug, Clone, PartialEq)]
pub struct KnowledgeEntry {
    pub topology_fingerprint: u64,
    pub source: NodeId,
    pub dest: NodeId,
    pub best_path: Vec<NodeId>,
    pub raw_bandwidth: f64,
    pub mean_grade: f64,
    pub recorded_at: u64,
}

impl KnowledgeEntry {
    pub fn validate(&self) -> Result<(), KbError> {
        let bad = |m: &str| Err(KbError::InvalidEntry(m.to_string()));
        if self.best_path.len() < 2 {
            return bad("path needs at least two nodes");
        }
        if self.best_path[0] != self.source || self.best_path[self.best_path.len() - 1] != self.dest {
            return bad("path endpoints do not match source and destination");
        }
        if !(self.raw_bandwidth.is_finite() && self.raw_bandwidth > 0.0) {
            return bad("bandwidth must be positive and finite");
        }
        if !self.mean_grade.is_finite() {
            return bad("mean grade must be finite");
        }
        Ok(())
    }

    fn key(&self) -> (u64, NodeId, NodeId) {
        (self.topology_fingerprint, self.source, self.dest)
    }

    pub fn to_line(&self) -> String {
        let path: Vec<String> = self.best_path.iter().map(|n| n.to_string()).collect();
        format!(
            "kb {:016x} {} {} {:?} {:?} {} {}",
            self.topology_fingerprint,
            self.source,
            self.dest,
            self.raw_bandwidth,
            self.mean_grade,
            self.recorded_at,
            path.join("-")
        )
    }

    fn parse_line(line: &str) -> Result<Self, String> {
        let f: Vec<&str> = line.split_whitespace().collect();
        if f.len() != 8 || f[0] != "kb" {
            return Err(format!("expected 8 fields starting with 'kb', found {}", f.len()));
        }
        let fingerprint = u64::from_str_radix(f[1], 16).map_err(|_| format!("bad fingerprint '{}'", f[1]))?;
        let node = |s: &str| s.parse::<u32>().map(NodeId).map_err(|_| format!("bad node id '{}'", s));
        let real = |s: &str| s.parse::<f64>().map_err(|_| format!("bad number '{}'", s));
        let best_path = f[7].split('-').map(node).collect::<Result<Vec<_>, _>>()?;
        let entry = KnowledgeEntry {
            topology_fingerprint: fingerprint,
            source: node(f[2])?,
            dest: node(f[3])?,
            raw_bandwidth: real(f[4])?,
            mean_grade: real(f[5])?,
            recorded_at: f[6].parse().map_err(|_| format!("bad run counter '{}'", f[6]))?,
            best_path,
        };
        entry.validate().map_err(|e| e.to_string())?;
        Ok(entry)
    }
}

/// Reads and compacts the store. A missing file is an empty store.
pub fn load(store: &Path) -> Result<BTreeMap<(u64, NodeId, NodeId), KnowledgeEntry>, KbError> {
    let text = match fs::read_to_string(store) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(BTreeMap::new()),
        Err(e) => return Err(io_error(store, e)),
    };
    let mut best: BTreeMap<(u64, NodeId, NodeId), KnowledgeEntry> = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let entry = KnowledgeEntry::parse_line(line).map_err(|message| KbError::Corrupt {
            path: store.display().to_string(),
            line: i + 1,
            message,
        })?;
        match best.get(&entry.key()) {
            Some(held) if held.raw_bandwidth >= entry.raw_bandwidth => {}
            _ => {
                best.insert(entry.key(), entry);
            }
        }
    }
    Ok(best)
}

/// Appends `entry` unless the store already holds an equal or wider path for
/// the same key. Returns whether the entry was written.
pub fn record(entry: &KnowledgeEntry, store: &Path) -> Result<bool, KbError> {
    entry.validate()?;
    let existing = load(store)?;
    if let Some(held) = existing.get(&entry.key()) {
        if held.raw_bandwidth >= entry.raw_bandwidth {
            return Ok(false);
        }
    }
    let mut file = OpenOptions::new()
        .create(true)
        .append(true)
        .open(store)
        .map_err(|e| io_error(store, e))?;
    writeln!(file, "{}", entry.to_line()).map_err(|e| io_error(store, e))?;
    Ok(true)
}

pub fn lookup(fingerprint: u64, source: NodeId, dest: NodeId, store: &Path) -> Result<Option<KnowledgeEntry>, KbError> {
    Ok(load(store)?.remove(&(fingerprint, source, dest)))
}

/// One past the largest run counter in the store.
pub fn next_run_counter(store: &Path) -> Result<u64, KbError> {
    Ok(load(store)?.values().map(|e| e.recorded_at + 1).max().unwrap_or(0))
}

fn io_error(path: &Path, e: std::io::Error) -> KbError {
    KbError::Io { path: path.display().to_string(), message: e.to_string() }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn entry(bw: f64) -> KnowledgeEntry {
        KnowledgeEntry {
            topology_fingerprint: 0xdead_beef,
            source: NodeId(0),
            dest: NodeId(3),
            best_path: vec![NodeId(0), NodeId(2), NodeId(3)],
            raw_bandwidth: bw,
            mean_grade: 0.75,
            recorded_at: 1,
        }
    }

    #[test]
    fn empty_store_is_a_miss() {
        let dir = tempfile::tempdir().unwrap();
        let store = dir.path().join("kb.txt");
        assert_eq!(lookup(1, NodeId(0), NodeId(1), &store).unwrap(), None);
    }

    #[test]
    fn record_then_lookup() {
        let dir = tempfile::tempdir().unwrap();
        let store = dir.path().join("kb.txt");
        assert!(record(&entry(40.0), &store).unwrap());
        assert_eq!(lookup(0xdead_beef, NodeId(0), NodeId(3), &store).unwrap(), Some(entry(40.0)));
        assert_eq!(lookup(0xbeef, NodeId(0), NodeId(3), &store).unwrap(), None);
    }

    #[test]
    fn worse_path_does_not_replace() {
        let dir = tempfile::tempdir().unwrap();
        let store = dir.path().join("kb.txt");
        record(&entry(40.0), &store).unwrap();
        let before = fs::read(&store).unwrap();
        assert!(!record(&entry(30.0), &store).unwrap());
        assert_eq!(fs::read(&store).unwrap(), before);
    }

    #[test]
    fn better_path_replaces() {
        let dir = tempfile::tempdir().unwrap();
        let store = dir.path().join("kb.txt");
        record(&entry(40.0), &store).unwrap();
        record(&entry(60.0), &store).unwrap();
        let held = lookup(0xdead_beef, NodeId(0), NodeId(3), &store).unwrap().unwrap();
        assert_eq!(held.raw_bandwidth, 60.0);
        let text = fs::read_to_string(&store).unwrap();
        assert!(text.lines().last().unwrap().contains(" 60.0 "));
    }

    #[test]
    fn corrupt_line_is_reported_with_number() {
        let dir = tempfile::tempdir().unwrap();
        let store = dir.path().join("kb.txt");
        fs::write(&store, format!("{}\nkb nonsense\n", entry(5.0).to_line())).unwrap();
        match lookup(1, NodeId(0), NodeId(3), &store) {
            Err(KbError::Corrupt { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn mismatched_endpoints_rejected() {
        let mut e = entry(5.0);
        e.dest = NodeId(7);
        assert!(e.validate().is_err());
    }

    #[test]
    fn fnv_reference_values() {
        assert_eq!(fingerprint_bytes(b""), 0xcbf2_9ce4_8422_2325);
        assert_eq!(fingerprint_bytes(b"a"), 0xaf63_dc4c_8601_ec8c);
    }
}

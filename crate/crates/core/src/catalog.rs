//! Append-only catalog of verified graphs, one JSON object per line.

use std::collections::{BTreeMap, HashSet};
use std::fs::{File, OpenOptions};
use std::io::{self, Read, Seek, SeekFrom, Write};
use std::path::{Path, PathBuf};

use rand::seq::index::sample;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::SimpleGraph;
use crate::search::Problem;
use crate::verify::classify;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub mode: String,
    /// Base pregraph id for lift modes, the source graph for excision.
    pub base: String,
    pub group: String,
    /// sha256 of the voltage file text, empty when there is none.
    pub assignment: String,
    pub seed: u64,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub problem: Problem,
    pub order: usize,
    pub digest: String,
    pub graph6: String,
    pub provenance: Provenance,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RejectReason {
    #[error("graph6 does not decode: {0}")]
    Decode(String),
    #[error("stored order {stored}, graph has {found}")]
    Order { stored: usize, found: usize },
    #[error("stored digest does not match the graph")]
    Digest,
    #[error("graph does not satisfy {0}")]
    Problem(Problem),
}

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("corrupt catalog line {line} at byte {offset}: {msg}")]
    Corrupt { line: usize, offset: u64, msg: String },
    #[error("catalog line {line} fails verification: {reason}")]
    Unverified { line: usize, reason: RejectReason },
}

/// An entry whose stored fields were checked against its graph.
#[derive(Debug, Clone)]
pub struct Verified(CatalogEntry);

impl Verified {
    pub fn entry(&self) -> &CatalogEntry {
        &self.0
    }
}

impl CatalogEntry {
    /// Builds an entry from a graph, classifying it first.
    pub fn verified(problem: Problem, graph: &SimpleGraph, provenance: Provenance) -> Result<Verified, RejectReason> {
        let r = classify(graph, problem.targets());
        if !problem.satisfied_by(&r) {
            return Err(RejectReason::Problem(problem));
        }
        Ok(Verified(CatalogEntry {
            problem,
            order: graph.n(),
            digest: r.canonical_digest.expect("targets ask for the digest"),
            graph6: graph.to_graph6(),
            provenance,
        }))
    }

    pub fn graph(&self) -> Result<SimpleGraph, RejectReason> {
        SimpleGraph::from_graph6(&self.graph6).map_err(|e| RejectReason::Decode(e.to_string()))
    }

    /// Re-derives order, digest and problem membership from the graph.
    pub fn verify(self) -> Result<Verified, RejectReason> {
        let g = self.graph()?;
        if g.n() != self.order {
            return Err(RejectReason::Order { stored: self.order, found: g.n() });
        }
        let v = CatalogEntry::verified(self.problem, &g, self.provenance.clone())?;
        if v.0.digest != self.digest {
            return Err(RejectReason::Digest);
        }
        Ok(Verified(self))
    }

    pub fn parse_line(line: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(line)
    }

    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("entry serializes")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Insert {
    Inserted,
    Duplicate,
}

#[derive(Debug)]
pub struct Catalog {
    path: Option<PathBuf>,
    file: Option<File>,
    entries: Vec<CatalogEntry>,
    keys: HashSet<(Problem, String)>,
    /// Smallest order per problem and how many distinct graphs have it.
    best: BTreeMap<String, (Problem, usize, usize)>,
}

impl Catalog {
    pub fn in_memory() -> Self {
        Catalog { path: None, file: None, entries: Vec::new(), keys: HashSet::new(), best: BTreeMap::new() }
    }

    /// Opens or creates a catalog file. A final line without a newline is a
    /// torn write: it is dropped and truncated away. Any other unreadable
    /// line is an error.
    pub fn open(path: &Path) -> Result<Self, CatalogError> {
        let io_err = |source| CatalogError::Io { path: path.to_path_buf(), source };
        let mut file = OpenOptions::new().read(true).append(true).create(true).open(path).map_err(io_err)?;
        let mut text = String::new();
        file.read_to_string(&mut text).map_err(io_err)?;
        let mut cat = Catalog { path: Some(path.to_path_buf()), ..Catalog::in_memory() };
        let mut offset = 0u64;
        for (i, line) in text.split_inclusive('\n').enumerate() {
            let torn = !line.ends_with('\n');
            let body = line.trim_end_matches(['\n', '\r']);
            if !body.trim().is_empty() {
                match CatalogEntry::parse_line(body) {
                    Ok(e) => cat.add(e),
                    Err(_) if torn => {
                        log::warn!("{}: dropping torn final line at byte {offset}", path.display());
                        file.set_len(offset).map_err(io_err)?;
                        file.seek(SeekFrom::End(0)).map_err(io_err)?;
                        break;
                    }
                    Err(e) => return Err(CatalogError::Corrupt { line: i + 1, offset, msg: e.to_string() }),
                }
            }
            offset += line.len() as u64;
        }
        cat.file = Some(file);
        Ok(cat)
    }

    /// Reads a catalog without creating or repairing anything.
    pub fn parse(text: &str) -> Result<Self, CatalogError> {
        let mut cat = Catalog::in_memory();
        let mut offset = 0u64;
        for (i, line) in text.split_inclusive('\n').enumerate() {
            let body = line.trim_end_matches(['\n', '\r']);
            if !body.trim().is_empty() {
                let e = CatalogEntry::parse_line(body).map_err(|e| CatalogError::Corrupt { line: i + 1, offset, msg: e.to_string() })?;
                cat.add(e);
            }
            offset += line.len() as u64;
        }
        Ok(cat)
    }

    fn add(&mut self, e: CatalogEntry) {
        if !self.keys.insert((e.problem, e.digest.clone())) {
            return;
        }
        let slot = self.best.entry(e.problem.to_string()).or_insert((e.problem, e.order, 0));
        if e.order < slot.1 {
            *slot = (e.problem, e.order, 0);
        }
        if e.order == slot.1 {
            slot.2 += 1;
        }
        self.entries.push(e);
    }

    pub fn path(&self) -> Option<&Path> {
        self.path.as_deref()
    }

    pub fn contains(&self, problem: Problem, digest: &str) -> bool {
        self.keys.contains(&(problem, digest.to_string()))
    }

    /// Appends the entry unless its graph is already stored for the problem.
    pub fn insert(&mut self, v: Verified) -> Result<Insert, CatalogError> {
        let e = v.0;
        if self.contains(e.problem, &e.digest) {
            return Ok(Insert::Duplicate);
        }
        if let Some(f) = self.file.as_mut() {
            let mut line = e.to_line();
            line.push('\n');
            let path = self.path.clone().unwrap_or_default();
            f.write_all(line.as_bytes()).and_then(|_| f.flush()).map_err(|source| CatalogError::Io { path, source })?;
        }
        self.add(e);
        Ok(Insert::Inserted)
    }

    /// Smallest order stored for `problem` and the number of distinct
    /// graphs of that order.
    pub fn best(&self, problem: Problem) -> Option<(usize, usize)> {
        self.best.get(&problem.to_string()).map(|&(_, o, c)| (o, c))
    }

    pub fn problems(&self) -> impl Iterator<Item = (Problem, usize, usize)> + '_ {
        self.best.values().copied()
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Re-verifies up to `count` entries chosen at random and returns how
    /// many were checked.
    pub fn spot_check<R: Rng + ?Sized>(&self, count: usize, rng: &mut R) -> Result<usize, CatalogError> {
        let n = self.entries.len();
        let picks = sample(rng, n, count.min(n));
        for i in picks.iter() {
            self.entries[i].clone().verify().map_err(|reason| CatalogError::Unverified { line: i + 1, reason })?;
        }
        Ok(picks.len())
    }

    pub fn verify_all(&self) -> Result<(), CatalogError> {
        for (i, e) in self.entries.iter().enumerate() {
            e.clone().verify().map_err(|reason| CatalogError::Unverified { line: i + 1, reason })?;
        }
        Ok(())
    }
}

//! Shipped certificate inputs and their expected properties.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::graph::{parse_graph_file, GraphError, SimpleGraph};
use crate::group::{FiniteGroup, GroupError};
use crate::lift::{lift, LiftReject};
use crate::pregraph::{Pregraph, PregraphError};
use crate::verify::{classify, GraphReport, Targets};
use crate::voltage::{VoltageAssignment, VoltageError};

#[derive(Debug, Error)]
pub enum FixtureError {
    #[error("unknown fixture `{0}`")]
    UnknownId(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: bad manifest: {source}")]
    Manifest { path: PathBuf, source: serde_json::Error },
    #[error("manifest lists no `{0}` file")]
    MissingRole(String),
    #[error("checksum mismatch for {file}: expected {expected}, found {found}")]
    Checksum { file: String, expected: String, found: String },
    #[error("base: {0}")]
    Pregraph(#[from] PregraphError),
    #[error("group: {0}")]
    Group(#[from] GroupError),
    #[error("voltages: {0}")]
    Voltage(#[from] VoltageError),
    #[error("graph line {0}: {1}")]
    Graph(usize, GraphError),
    #[error("graph file holds {0} graphs, expected 1")]
    GraphCount(usize),
    #[error("lift: {0}")]
    Lift(#[from] LiftReject),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expected {
    pub order: usize,
    pub k: usize,
    pub girth: usize,
    pub bipartite: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda_v: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda_e: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureManifest {
    pub id: String,
    pub description: String,
    /// Role (`base`, `group`, `volt` or `graph`) to file name.
    pub files: BTreeMap<String, String>,
    pub sha256: BTreeMap<String, String>,
    pub expected: Expected,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub notes: Option<String>,
}

#[derive(Debug, Clone)]
pub enum FixtureInputs {
    Lift { base: Pregraph, group: FiniteGroup, alpha: VoltageAssignment },
    Graph(SimpleGraph),
}

#[derive(Debug, Clone)]
pub struct Fixture {
    pub manifest: FixtureManifest,
    pub inputs: FixtureInputs,
}

impl Fixture {
    /// The lift for voltage fixtures, the stored graph otherwise.
    pub fn graph(&self) -> Result<SimpleGraph, FixtureError> {
        match &self.inputs {
            FixtureInputs::Lift { base, group, alpha } => Ok(lift(base, group, alpha)?),
            FixtureInputs::Graph(g) => Ok(g.clone()),
        }
    }

    /// Classifies the graph and lists every expectation it misses.
    pub fn check(&self) -> Result<(GraphReport, Vec<String>), FixtureError> {
        let h = self.graph()?;
        let e = &self.manifest.expected;
        let lambda = e.lambda_v.is_some() || e.lambda_e.is_some();
        let r = classify(&h, Targets { lambda, g_plus_1: false, canonical: false });
        let mut misses = Vec::new();
        let mut want = |what: &str, ok: bool, found: String| {
            if !ok {
                misses.push(format!("{what}: found {found}"));
            }
        };
        want("order", r.n == e.order, r.n.to_string());
        want("degree", r.k == Some(e.k), format!("{:?}", r.k));
        want("girth", r.girth == Some(e.girth), format!("{:?}", r.girth));
        want("bipartite", r.bipartite == e.bipartite, r.bipartite.to_string());
        if let Some(l) = e.lambda_v {
            want("lambda_v", r.lambda_v.value() == Some(l), format!("{:?}", r.lambda_v));
        }
        if let Some(l) = e.lambda_e {
            want("lambda_e", r.lambda_e.value() == Some(l), format!("{:?}", r.lambda_e));
        }
        Ok((r, misses))
    }
}

pub fn fixture_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

/// Ids of all shipped fixtures, sorted.
pub fn fixture_ids() -> Vec<String> {
    let mut ids: Vec<String> = fs::read_dir(fixture_root())
        .map(|rd| {
            rd.filter_map(Result::ok)
                .filter(|e| e.path().join("expect.json").is_file())
                .filter_map(|e| e.file_name().into_string().ok())
                .collect()
        })
        .unwrap_or_default();
    ids.sort();
    ids
}

pub fn load_fixture(id: &str) -> Result<Fixture, FixtureError> {
    if id.is_empty() || id.contains(['/', '\\', '.']) {
        return Err(FixtureError::UnknownId(id.to_string()));
    }
    let dir = fixture_root().join(id);
    if !dir.join("expect.json").is_file() {
        return Err(FixtureError::UnknownId(id.to_string()));
    }
    load_fixture_dir(&dir)
}

fn read(path: PathBuf) -> Result<Vec<u8>, FixtureError> {
    fs::read(&path).map_err(|source| FixtureError::Io { path, source })
}

/// Loads a fixture directory, checking every file against its recorded
/// checksum before parsing.
pub fn load_fixture_dir(dir: &Path) -> Result<Fixture, FixtureError> {
    let mpath = dir.join("expect.json");
    let manifest: FixtureManifest =
        serde_json::from_slice(&read(mpath.clone())?).map_err(|source| FixtureError::Manifest { path: mpath, source })?;
    let mut texts = BTreeMap::new();
    for (role, file) in &manifest.files {
        let bytes = read(dir.join(file))?;
        let found = hex::encode(Sha256::digest(&bytes));
        let expected = manifest.sha256.get(role).cloned().unwrap_or_default();
        if found != expected {
            return Err(FixtureError::Checksum { file: file.clone(), expected, found });
        }
        texts.insert(role.as_str(), String::from_utf8_lossy(&bytes).into_owned());
    }
    let text = |role: &str| texts.get(role).ok_or_else(|| FixtureError::MissingRole(role.to_string()));
    let inputs = if let Some(g) = texts.get("graph") {
        let mut graphs = parse_graph_file(g).map_err(|(line, e)| FixtureError::Graph(line, e))?;
        if graphs.len() != 1 {
            return Err(FixtureError::GraphCount(graphs.len()));
        }
        FixtureInputs::Graph(graphs.pop().expect("one graph"))
    } else {
        let base = Pregraph::parse(text("base")?)?;
        let group = FiniteGroup::parse(text("group")?)?;
        let (alpha, _) = VoltageAssignment::parse(text("volt")?, &base, &group)?;
        FixtureInputs::Lift { base, group, alpha }
    };
    Ok(Fixture { manifest, inputs })
}

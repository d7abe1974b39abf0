use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Mutex;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::SimpleGraph;
use crate::group::FiniteGroup;
use crate::pregraph::Pregraph;
use crate::verify::{
    canonical_digest, girth, girth_bounded, girth_cycle_regularity, has_cycle_of_length, GraphReport, Lambda, Targets,
};
use crate::voltage::VoltageAssignment;

/// What makes a graph worth keeping.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Problem {
    /// Any simple graph of girth at least `g`.
    Girth { g: usize },
    /// Connected k-regular with girth at least `g`.
    Cage { k: usize, g: usize },
    Vgr { k: usize, g: usize, lambda: Option<u64> },
    Egr { k: usize, g: usize, lambda: Option<u64> },
    /// Girth exactly `g` and no cycle of length `g + 1`.
    NoG1 { k: usize, g: usize },
    Spectrum { k: usize, g: usize, n: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("bad problem `{0}`: expected cage(k,g), vgr(k,g[,l]), egr(k,g[,l]), no-g1(k,g), spectrum(k,g,n) or girth(g)")]
pub struct ProblemParseError(pub String);

impl Problem {
    pub fn degree(&self) -> Option<usize> {
        match *self {
            Problem::Girth { .. } => None,
            Problem::Cage { k, .. }
            | Problem::Vgr { k, .. }
            | Problem::Egr { k, .. }
            | Problem::NoG1 { k, .. }
            | Problem::Spectrum { k, .. } => Some(k),
        }
    }

    pub fn girth(&self) -> usize {
        match *self {
            Problem::Girth { g }
            | Problem::Cage { g, .. }
            | Problem::Vgr { g, .. }
            | Problem::Egr { g, .. }
            | Problem::NoG1 { g, .. }
            | Problem::Spectrum { g, .. } => g,
        }
    }

    pub fn accepts(&self, h: &SimpleGraph) -> bool {
        if let Problem::Girth { g } = *self {
            return girth_bounded(h, g).is_none();
        }
        let k = self.degree().expect("all other problems fix k");
        if h.regular_degree() != Some(k) || !h.is_connected() {
            return false;
        }
        let g = self.girth();
        match *self {
            Problem::Cage { .. } => girth_bounded(h, g).is_none(),
            Problem::Vgr { lambda, .. } => girth(h) == Some(g) && lambda_matches(girth_cycle_regularity(h).0, lambda),
            Problem::Egr { lambda, .. } => girth(h) == Some(g) && lambda_matches(girth_cycle_regularity(h).1, lambda),
            Problem::NoG1 { .. } => girth(h) == Some(g) && !has_cycle_of_length(h, g + 1),
            Problem::Spectrum { n, .. } => h.n() == n && girth(h) == Some(g),
            Problem::Girth { .. } => unreachable!(),
        }
    }
}

impl Problem {
    /// Checks [`classify`](crate::verify::classify) needs for [`Problem::satisfied_by`].
    pub fn targets(&self) -> Targets {
        Targets {
            lambda: matches!(self, Problem::Vgr { .. } | Problem::Egr { .. }),
            g_plus_1: matches!(self, Problem::NoG1 { .. }),
            canonical: true,
        }
    }

    /// Same test as [`Problem::accepts`], read off a report made with at
    /// least [`Problem::targets`].
    pub fn satisfied_by(&self, r: &GraphReport) -> bool {
        let g = self.girth();
        if let Problem::Girth { .. } = *self {
            return r.girth.is_none_or(|x| x >= g);
        }
        if r.k != self.degree() || !r.connected {
            return false;
        }
        match *self {
            Problem::Cage { .. } => r.girth.is_none_or(|x| x >= g),
            Problem::Vgr { lambda, .. } => r.girth == Some(g) && lambda_matches(r.lambda_v, lambda),
            Problem::Egr { lambda, .. } => r.girth == Some(g) && lambda_matches(r.lambda_e, lambda),
            Problem::NoG1 { .. } => r.girth == Some(g) && r.has_g_plus_1_cycle == Some(false),
            Problem::Spectrum { n, .. } => r.n == n && r.girth == Some(g),
            Problem::Girth { .. } => unreachable!(),
        }
    }
}

fn lambda_matches(found: Lambda, want: Option<u64>) -> bool {
    match (found, want) {
        (Lambda::Regular(x), Some(w)) => x == w,
        (Lambda::Regular(_), None) => true,
        _ => false,
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Problem::Girth { g } => write!(f, "girth({g})"),
            Problem::Cage { k, g } => write!(f, "cage({k},{g})"),
            Problem::Vgr { k, g, lambda: Some(l) } => write!(f, "vgr({k},{g},{l})"),
            Problem::Vgr { k, g, lambda: None } => write!(f, "vgr({k},{g})"),
            Problem::Egr { k, g, lambda: Some(l) } => write!(f, "egr({k},{g},{l})"),
            Problem::Egr { k, g, lambda: None } => write!(f, "egr({k},{g})"),
            Problem::NoG1 { k, g } => write!(f, "no-g1({k},{g})"),
            Problem::Spectrum { k, g, n } => write!(f, "spectrum({k},{g},{n})"),
        }
    }
}

impl FromStr for Problem {
    type Err = ProblemParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ProblemParseError(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let (name, rest) = compact.split_once('(').ok_or_else(bad)?;
        let args = rest.strip_suffix(')').ok_or_else(bad)?;
        let nums: Vec<u64> = args.split(',').map(|a| a.parse().map_err(|_| bad())).collect::<Result<_, _>>()?;
        let u = |i: usize| nums[i] as usize;
        let p = match (name, nums.len()) {
            ("girth", 1) => Problem::Girth { g: u(0) },
            ("cage", 2) => Problem::Cage { k: u(0), g: u(1) },
            ("vgr", 2) => Problem::Vgr { k: u(0), g: u(1), lambda: None },
            ("vgr", 3) => Problem::Vgr { k: u(0), g: u(1), lambda: Some(nums[2]) },
            ("egr", 2) => Problem::Egr { k: u(0), g: u(1), lambda: None },
            ("egr", 3) => Problem::Egr { k: u(0), g: u(1), lambda: Some(nums[2]) },
            ("no-g1", 2) => Problem::NoG1 { k: u(0), g: u(1) },
            ("spectrum", 3) => Problem::Spectrum { k: u(0), g: u(1), n: u(2) },
            _ => return Err(bad()),
        };
        if p.girth() < 3 || p.degree().is_some_and(|k| k < 2) {
            return Err(bad());
        }
        Ok(p)
    }
}

impl From<Problem> for String {
    fn from(p: Problem) -> String {
        p.to_string()
    }
}

impl TryFrom<String> for Problem {
    type Error = ProblemParseError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

/// A lift produced by a search together with how it was made.
#[derive(Debug, Clone, Copy)]
pub struct Found<'a> {
    pub graph: &'a SimpleGraph,
    pub base: &'a Pregraph,
    pub group: &'a FiniteGroup,
    pub alpha: &'a VoltageAssignment,
    pub mode: &'static str,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Offer {
    Emitted,
    Duplicate,
    Uninteresting,
}

/// Receives lifts from the searches. Shared between worker threads.
pub trait Sink: Sync {
    fn offer(&self, found: Found<'_>) -> Offer;

    /// Searches stop early once this returns true.
    fn satisfied(&self) -> bool {
        false
    }
}

/// A kept graph with enough provenance to rebuild it.
#[derive(Debug, Clone)]
pub struct Collected {
    pub graph: SimpleGraph,
    pub digest: String,
    pub base: String,
    pub group: String,
    pub alpha: String,
    pub mode: &'static str,
}

#[derive(Debug, Default)]
struct CollectState {
    digests: HashSet<String>,
    kept: Vec<Collected>,
    offered: u64,
    duplicates: u64,
}

/// Keeps one graph per isomorphism class among those the problem accepts.
#[derive(Debug)]
pub struct CollectSink {
    problem: Problem,
    stop_after: Option<usize>,
    state: Mutex<CollectState>,
}

impl CollectSink {
    pub fn new(problem: Problem) -> Self {
        CollectSink { problem, stop_after: None, state: Mutex::new(CollectState::default()) }
    }

    /// Reports itself satisfied after `n` distinct graphs.
    pub fn stop_after(mut self, n: usize) -> Self {
        self.stop_after = Some(n);
        self
    }

    pub fn problem(&self) -> Problem {
        self.problem
    }

    pub fn digests(&self) -> HashSet<String> {
        self.state.lock().expect("sink lock").digests.clone()
    }

    pub fn collected(&self) -> Vec<Collected> {
        self.state.lock().expect("sink lock").kept.clone()
    }

    pub fn into_collected(self) -> Vec<Collected> {
        self.state.into_inner().expect("sink lock").kept
    }

    /// Offers seen and how many of them repeated a kept class.
    pub fn counts(&self) -> (u64, u64) {
        let s = self.state.lock().expect("sink lock");
        (s.offered, s.duplicates)
    }
}

impl Sink for CollectSink {
    fn offer(&self, found: Found<'_>) -> Offer {
        {
            let mut s = self.state.lock().expect("sink lock");
            s.offered += 1;
        }
        if !self.problem.accepts(found.graph) {
            return Offer::Uninteresting;
        }
        let digest = canonical_digest(found.graph);
        let mut s = self.state.lock().expect("sink lock");
        if !s.digests.insert(digest.clone()) {
            s.duplicates += 1;
            return Offer::Duplicate;
        }
        s.kept.push(Collected {
            graph: found.graph.clone(),
            digest,
            base: found.base.to_text(),
            group: found.group.name().to_string(),
            alpha: found.alpha.to_text(found.base, "base", found.group),
            mode: found.mode,
        });
        Offer::Emitted
    }

    fn satisfied(&self) -> bool {
        self.stop_after.is_some_and(|n| self.state.lock().expect("sink lock").kept.len() >= n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn problem_round_trip() {
        for s in ["cage(4,9)", "vgr(3,6,4)", "egr(3,5)", "no-g1(3,5)", "spectrum(3,5,10)", "girth(4)"] {
            let p: Problem = s.parse().unwrap();
            assert_eq!(p.to_string(), s);
        }
        assert_eq!("cage( 3 , 5 )".parse::<Problem>().unwrap(), Problem::Cage { k: 3, g: 5 });
        for bad in ["cage(3)", "cage(1,5)", "cage(3,2)", "moore(3,5)", "cage(3,5", "cage(a,5)"] {
            assert!(bad.parse::<Problem>().is_err(), "{bad}");
        }
    }

    #[test]
    fn predicates_on_petersen() {
        let p = SimpleGraph::petersen();
        assert!(Problem::Cage { k: 3, g: 5 }.accepts(&p));
        assert!(Problem::Cage { k: 3, g: 4 }.accepts(&p));
        assert!(!Problem::Cage { k: 3, g: 6 }.accepts(&p));
        assert!(Problem::Vgr { k: 3, g: 5, lambda: Some(6) }.accepts(&p));
        assert!(!Problem::Vgr { k: 3, g: 5, lambda: Some(5) }.accepts(&p));
        assert!(Problem::Egr { k: 3, g: 5, lambda: Some(4) }.accepts(&p));
        assert!(!Problem::NoG1 { k: 3, g: 5 }.accepts(&p));
        assert!(Problem::Spectrum { k: 3, g: 5, n: 10 }.accepts(&p));
        assert!(!Problem::Spectrum { k: 3, g: 5, n: 12 }.accepts(&p));
        assert!(Problem::Girth { g: 5 }.accepts(&p));
        // The 3-cube is bipartite, so it has no 5-cycles.
        let cube = SimpleGraph::from_edges(8, (0..8).flat_map(|v| (0..3).map(move |b| (v, v ^ (1 << b)))).filter(|&(a, b)| a < b)).unwrap();
        assert!(Problem::NoG1 { k: 3, g: 4 }.accepts(&cube));
    }

    #[test]
    fn report_check_agrees_with_direct_check() {
        let cube = SimpleGraph::from_edges(8, (0..8).flat_map(|v| (0..3).map(move |b| (v, v ^ (1 << b)))).filter(|&(a, b)| a < b)).unwrap();
        let graphs = [SimpleGraph::petersen(), SimpleGraph::heawood(), cube, SimpleGraph::cycle(7), SimpleGraph::complete(4), SimpleGraph::new(3)];
        let problems = [
            "girth(5)", "cage(3,5)", "cage(3,6)", "cage(2,7)", "vgr(3,5,6)", "vgr(3,6)", "egr(3,5,4)", "egr(3,6,1)", "no-g1(3,4)",
            "no-g1(3,6)", "spectrum(3,6,14)", "spectrum(3,3,4)",
        ];
        for h in &graphs {
            for p in problems {
                let p: Problem = p.parse().unwrap();
                let r = crate::verify::classify(h, p.targets());
                assert_eq!(p.satisfied_by(&r), p.accepts(h), "{p} on {}", h.to_graph6());
            }
        }
    }
}

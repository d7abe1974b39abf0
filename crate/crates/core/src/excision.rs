//! Removing structured vertex sets from cages and completing the remainder
//! back to a regular graph of slightly smaller girth.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::graph::SimpleGraph;
use crate::verify::girth_bounded;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExcisionError {
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("graph is not {k}-regular")]
    NotRegular { k: usize },
    #[error("anchors {u} and {v} are at distance {found:?}, pattern needs {needed}")]
    AnchorDistance { u: usize, v: usize, needed: usize, found: Option<usize> },
    #[error("no vertex at distance {distance} from {u}")]
    NoAnchor { u: usize, distance: usize },
    #[error("{set} has {found} vertices, pattern needs {expected}")]
    LayerSize { set: &'static str, expected: usize, found: usize },
    #[error("pattern {pattern} needs degree at least 3, got {k}")]
    DegreeTooSmall { pattern: Pattern, k: usize },
    #[error("unknown pattern `{0}`")]
    UnknownPattern(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Pattern {
    /// Anchors at distance 4; `u`, `v`, both neighborhoods and all but three
    /// of `N2(u,v)`.
    Girth8Original,
    /// As above with all of `N2(u,v)`.
    Girth8Full,
    /// Anchors at distance 6; `u`, `v`, both neighborhoods, `N3(u,v)` and
    /// one vertex of `N2(u) ∩ N4(v)`.
    Girth12K4,
    /// Anchors at distance 6; `u`, `v`, both neighborhoods,
    /// `N2(u) ∩ N4(v)`, `N4(u) ∩ N2(v)` and all but three of `N3(u,v)`.
    Girth12K6,
}

impl Pattern {
    pub fn anchor_distance(self) -> usize {
        match self {
            Pattern::Girth8Original | Pattern::Girth8Full => 4,
            Pattern::Girth12K4 | Pattern::Girth12K6 => 6,
        }
    }

    pub fn removed_count(self, k: usize) -> usize {
        match self {
            Pattern::Girth8Original => 3 * k - 1,
            Pattern::Girth8Full => 3 * k + 2,
            Pattern::Girth12K4 => 3 * k + 3,
            Pattern::Girth12K6 => 5 * k - 1,
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Pattern::Girth8Original => "girth8-original",
            Pattern::Girth8Full => "girth8-full",
            Pattern::Girth12K4 => "girth12-k4",
            Pattern::Girth12K6 => "girth12-k6",
        })
    }
}

impl From<Pattern> for String {
    fn from(p: Pattern) -> String {
        p.to_string()
    }
}

impl TryFrom<String> for Pattern {
    type Error = ExcisionError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl FromStr for Pattern {
    type Err = ExcisionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "girth8-original" => Ok(Pattern::Girth8Original),
            "girth8-full" => Ok(Pattern::Girth8Full),
            "girth12-k4" => Ok(Pattern::Girth12K4),
            "girth12-k6" => Ok(Pattern::Girth12K6),
            _ => Err(ExcisionError::UnknownPattern(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExcisionPlan {
    /// `None` for a hand-picked vertex set.
    pub pattern: Option<Pattern>,
    pub u: usize,
    pub v: usize,
    /// Sorted.
    pub removed: Vec<usize>,
}

impl ExcisionPlan {
    pub fn custom(g: &SimpleGraph, removed: &[usize]) -> Result<Self, ExcisionError> {
        let mut r = removed.to_vec();
        r.sort_unstable();
        r.dedup();
        if let Some(&x) = r.iter().find(|&&x| x >= g.n()) {
            return Err(ExcisionError::VertexOutOfRange { vertex: x, n: g.n() });
        }
        let (u, v) = (r.first().copied().unwrap_or(0), r.last().copied().unwrap_or(0));
        Ok(ExcisionPlan { pattern: None, u, v, removed: r })
    }
}

fn check_vertex(g: &SimpleGraph, v: usize) -> Result<(), ExcisionError> {
    if v >= g.n() {
        Err(ExcisionError::VertexOutOfRange { vertex: v, n: g.n() })
    } else {
        Ok(())
    }
}

/// Vertices at distance exactly `i` from `v`, ascending.
pub fn neighborhood(g: &SimpleGraph, v: usize, i: usize) -> Result<Vec<usize>, ExcisionError> {
    check_vertex(g, v)?;
    let dist = g.bfs_distances(v);
    Ok((0..g.n()).filter(|&x| dist[x] as usize == i).collect())
}

/// Vertices at distance `i` from both `u` and `v`, ascending.
pub fn co_neighborhood(g: &SimpleGraph, u: usize, v: usize, i: usize) -> Result<Vec<usize>, ExcisionError> {
    let a = neighborhood(g, u, i)?;
    let b = neighborhood(g, v, i)?;
    Ok(intersect(&a, &b))
}

fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().copied().filter(|x| b.binary_search(x).is_ok()).collect()
}

/// The first vertex at distance `d` from `u` in breadth-first order,
/// neighbors visited in ascending order.
pub fn first_at_distance(g: &SimpleGraph, u: usize, d: usize) -> Option<usize> {
    let mut dist = vec![usize::MAX; g.n()];
    let mut queue = VecDeque::from([u]);
    dist[u] = 0;
    while let Some(x) = queue.pop_front() {
        if dist[x] == d {
            return Some(x);
        }
        for &y in g.neighbors(x) {
            let y = y as usize;
            if dist[y] == usize::MAX {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
    None
}

/// Layer sets around a pair of anchors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnchorLayers {
    pub distance: Option<usize>,
    pub n1_u: Vec<usize>,
    pub n1_v: Vec<usize>,
    pub n2_uv: Vec<usize>,
    pub n3_uv: Vec<usize>,
    /// `N2(u) ∩ N4(v)`.
    pub n2u_n4v: Vec<usize>,
    /// `N4(u) ∩ N2(v)`.
    pub n4u_n2v: Vec<usize>,
}

pub fn anchor_layers(g: &SimpleGraph, u: usize, v: usize) -> Result<AnchorLayers, ExcisionError> {
    check_vertex(g, u)?;
    check_vertex(g, v)?;
    let du = g.bfs_distances(u);
    let dv = g.bfs_distances(v);
    let layer = |a: &[u32], b: &[u32], i: usize, j: usize| -> Vec<usize> {
        (0..g.n()).filter(|&x| a[x] as usize == i && b[x] as usize == j).collect()
    };
    let d = du[v];
    Ok(AnchorLayers {
        distance: (d != u32::MAX).then_some(d as usize),
        n1_u: (0..g.n()).filter(|&x| du[x] == 1).collect(),
        n1_v: (0..g.n()).filter(|&x| dv[x] == 1).collect(),
        n2_uv: layer(&du, &dv, 2, 2),
        n3_uv: layer(&du, &dv, 3, 3),
        n2u_n4v: layer(&du, &dv, 2, 4),
        n4u_n2v: layer(&du, &dv, 4, 2),
    })
}

/// Builds the removal set for `pattern` on a k-regular graph. Anchors
/// default to vertex 0 and the first vertex at the pattern's distance.
pub fn plan(g: &SimpleGraph, pattern: Pattern, k: usize, anchors: Option<(usize, usize)>) -> Result<ExcisionPlan, ExcisionError> {
    if g.regular_degree() != Some(k) {
        return Err(ExcisionError::NotRegular { k });
    }
    if k < 3 {
        return Err(ExcisionError::DegreeTooSmall { pattern, k });
    }
    let need = pattern.anchor_distance();
    let (u, v) = match anchors {
        Some(p) => p,
        None => {
            check_vertex(g, 0)?;
            (0, first_at_distance(g, 0, need).ok_or(ExcisionError::NoAnchor { u: 0, distance: need })?)
        }
    };
    let layers = anchor_layers(g, u, v)?;
    if layers.distance != Some(need) {
        return Err(ExcisionError::AnchorDistance { u, v, needed: need, found: layers.distance });
    }
    let size = |set: &'static str, xs: &[usize]| {
        if xs.len() == k {
            Ok(())
        } else {
            Err(ExcisionError::LayerSize { set, expected: k, found: xs.len() })
        }
    };
    let mut removed = vec![u, v];
    removed.extend(&layers.n1_u);
    removed.extend(&layers.n1_v);
    match pattern {
        Pattern::Girth8Original | Pattern::Girth8Full => {
            size("N2(u,v)", &layers.n2_uv)?;
            let skip = if pattern == Pattern::Girth8Original { 3 } else { 0 };
            removed.extend(&layers.n2_uv[skip..]);
        }
        Pattern::Girth12K4 | Pattern::Girth12K6 => {
            size("N3(u,v)", &layers.n3_uv)?;
            size("N2(u) ∩ N4(v)", &layers.n2u_n4v)?;
            size("N4(u) ∩ N2(v)", &layers.n4u_n2v)?;
            if pattern == Pattern::Girth12K4 {
                removed.extend(&layers.n3_uv);
                removed.push(layers.n2u_n4v[0]);
            } else {
                removed.extend(&layers.n2u_n4v);
                removed.extend(&layers.n4u_n2v);
                removed.extend(&layers.n3_uv[3..]);
            }
        }
    }
    removed.sort_unstable();
    removed.dedup();
    debug_assert_eq!(removed.len(), pattern.removed_count(k));
    Ok(ExcisionPlan { pattern: Some(pattern), u, v, removed })
}

/// The induced subgraph on the vertices not removed, with the original
/// index of each remaining vertex.
pub fn excise(g: &SimpleGraph, plan: &ExcisionPlan) -> Result<(SimpleGraph, Vec<usize>), ExcisionError> {
    let mut keep = vec![true; g.n()];
    for &x in &plan.removed {
        check_vertex(g, x)?;
        keep[x] = false;
    }
    Ok(g.induced(&keep))
}

#[derive(Debug, Clone)]
pub struct Completion {
    pub graphs: Vec<SimpleGraph>,
    /// True when the search space was exhausted.
    pub exhausted: bool,
}

/// k-regular supergraphs of `g` on the same vertices with girth at least
/// `girth`. Edges join the smallest deficient vertex to partners in
/// ascending order, each at distance at least `girth - 1`.
pub fn complete_to_regular(g: &SimpleGraph, k: usize, girth: usize, limit: usize, budget: Duration) -> Completion {
    let n = g.n();
    let done = |graphs| Completion { graphs, exhausted: true };
    if (0..n).any(|v| g.degree(v) > k) || girth_bounded(g, girth).is_some() {
        return done(Vec::new());
    }
    let deficiency: usize = (0..n).map(|v| k - g.degree(v)).sum();
    if deficiency % 2 == 1 || limit == 0 {
        return done(Vec::new());
    }
    let mut c = Completer {
        h: g.clone(),
        k,
        reach: girth.saturating_sub(2),
        limit,
        deadline: Instant::now() + budget,
        out: Vec::new(),
        timed_out: false,
        dist: vec![u32::MAX; n],
        queue: Vec::new(),
    };
    c.rec();
    let exhausted = !c.timed_out && c.out.len() < limit;
    Completion { graphs: c.out, exhausted }
}

struct Completer {
    h: SimpleGraph,
    k: usize,
    /// Partners must be farther than this.
    reach: usize,
    limit: usize,
    deadline: Instant,
    out: Vec<SimpleGraph>,
    timed_out: bool,
    dist: Vec<u32>,
    queue: Vec<usize>,
}

impl Completer {
    fn rec(&mut self) {
        if self.out.len() >= self.limit || self.timed_out {
            return;
        }
        if Instant::now() >= self.deadline {
            self.timed_out = true;
            return;
        }
        let Some(v) = (0..self.h.n()).find(|&x| self.h.degree(x) < self.k) else {
            self.out.push(self.h.clone());
            return;
        };
        let partners = self.partners(v);
        if partners.len() < self.k - self.h.degree(v) {
            return;
        }
        for w in partners {
            self.h.add_edge(v, w).expect("partner is not adjacent");
            self.rec();
            self.h.remove_edge(v, w);
            if self.out.len() >= self.limit || self.timed_out {
                return;
            }
        }
    }

    /// Deficient vertices farther than `reach` from `v`, ascending.
    fn partners(&mut self, v: usize) -> Vec<usize> {
        self.queue.clear();
        self.queue.push(v);
        self.dist[v] = 0;
        let mut head = 0;
        while head < self.queue.len() {
            let x = self.queue[head];
            head += 1;
            if self.dist[x] as usize >= self.reach {
                continue;
            }
            for &y in self.h.neighbors(x) {
                let y = y as usize;
                if self.dist[y] == u32::MAX {
                    self.dist[y] = self.dist[x] + 1;
                    self.queue.push(y);
                }
            }
        }
        let out = (0..self.h.n()).filter(|&w| w != v && self.dist[w] == u32::MAX && self.h.degree(w) < self.k).collect();
        for &x in &self.queue {
            self.dist[x] = u32::MAX;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::girth;

    #[test]
    fn petersen_layers() {
        let p = SimpleGraph::petersen();
        for v in 0..10 {
            assert_eq!(neighborhood(&p, v, 1).unwrap().len(), 3);
            assert_eq!(neighborhood(&p, v, 2).unwrap().len(), 6);
        }
        assert!(matches!(neighborhood(&p, 10, 1), Err(ExcisionError::VertexOutOfRange { .. })));
    }

    fn heawood_minus_edge() -> SimpleGraph {
        let h = SimpleGraph::heawood();
        let (a, b) = h.edges().next().unwrap();
        let mut keep = vec![true; 14];
        keep[a] = false;
        keep[b] = false;
        h.induced(&keep).0
    }

    #[test]
    fn heawood_remainder_completes() {
        let r = heawood_minus_edge();
        assert_eq!(r.n(), 12);
        assert_eq!((0..12).filter(|&v| r.degree(v) == 2).count(), 4);
        let c = complete_to_regular(&r, 3, 5, 100, Duration::from_secs(5));
        assert!(c.exhausted);
        assert!(!c.graphs.is_empty());
        // Oracle: try every perfect matching on the deficient vertices.
        let def: Vec<usize> = (0..12).filter(|&v| r.degree(v) == 2).collect();
        let mut oracle = 0;
        for (a, b, c2, d) in [(0, 1, 2, 3), (0, 2, 1, 3), (0, 3, 1, 2)] {
            let mut h = r.clone();
            if h.add_edge(def[a], def[b]).is_ok() && h.add_edge(def[c2], def[d]).is_ok() && girth(&h).is_some_and(|x| x >= 5) {
                oracle += 1;
            }
        }
        assert_eq!(c.graphs.len(), oracle);
        for h in &c.graphs {
            assert_eq!(h.regular_degree(), Some(3));
            assert!(girth(h).unwrap() >= 5);
            assert!(r.is_subgraph_of(h));
        }
    }

    #[test]
    fn trivial_completions() {
        let p = SimpleGraph::petersen();
        let c = complete_to_regular(&p, 3, 5, 10, Duration::from_secs(1));
        assert_eq!(c.graphs, vec![p]);
        let mut k4e = SimpleGraph::complete(4);
        k4e.remove_edge(0, 1);
        assert!(complete_to_regular(&k4e, 3, 4, 10, Duration::from_secs(1)).graphs.is_empty());
    }

    #[test]
    fn anchors_follow_bfs_order() {
        let c = SimpleGraph::cycle(12);
        assert_eq!(first_at_distance(&c, 0, 6), Some(6));
        assert_eq!(first_at_distance(&c, 0, 2), Some(2));
        assert_eq!(first_at_distance(&c, 0, 7), None);
        assert!(matches!(plan(&c, Pattern::Girth8Original, 3, None), Err(ExcisionError::NotRegular { k: 3 })));
        let h = SimpleGraph::heawood();
        let edge = h.edges().next().unwrap();
        assert!(matches!(
            plan(&h, Pattern::Girth8Original, 3, Some(edge)),
            Err(ExcisionError::AnchorDistance { needed: 4, found: Some(1), .. })
        ));
        assert!(matches!(plan(&c, Pattern::Girth8Original, 2, None), Err(ExcisionError::DegreeTooSmall { .. })));
        let p = SimpleGraph::petersen();
        assert!(matches!(plan(&p, Pattern::Girth8Full, 3, None), Err(ExcisionError::NoAnchor { u: 0, distance: 4 })));
    }

    #[test]
    fn pattern_names() {
        for p in [Pattern::Girth8Original, Pattern::Girth8Full, Pattern::Girth12K4, Pattern::Girth12K6] {
            assert_eq!(p.to_string().parse::<Pattern>().unwrap(), p);
        }
        assert_eq!(Pattern::Girth8Original.removed_count(4), 11);
        assert_eq!(Pattern::Girth8Full.removed_count(4), 14);
        assert_eq!(Pattern::Girth12K4.removed_count(4), 15);
        assert_eq!(Pattern::Girth12K6.removed_count(6), 29);
    }
}

//! Verification and classification of simple graphs.

mod canon;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::graph::SimpleGraph;

pub use canon::{canonical_form, canonical_labeling};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("moore bound needs k >= 2 and g >= 3 (got k={k}, g={g})")]
    MooreDomain { k: usize, g: usize },
    #[error("moore bound overflows for k={k}, g={g}")]
    MooreOverflow { k: usize, g: usize },
}

/// Hex SHA-256 of a canonical form.
pub fn digest(form: &[u8]) -> String {
    hex::encode(Sha256::digest(form))
}

pub fn canonical_digest(g: &SimpleGraph) -> String {
    digest(&canonical_form(g, None))
}

/// Length of the shortest cycle, `None` for forests.
pub fn girth(g: &SimpleGraph) -> Option<usize> {
    girth_bounded(g, usize::MAX)
}

/// The girth if it is below `bound`, else `None`. Cheaper than [`girth`]
/// when `bound` is small.
pub fn girth_bounded(g: &SimpleGraph, bound: usize) -> Option<usize> {
    let n = g.n();
    let mut best = bound;
    let mut dist = vec![u32::MAX; n];
    let mut parent = vec![u32::MAX; n];
    let mut order: Vec<u32> = Vec::with_capacity(n);
    for s in 0..n {
        dist[s] = 0;
        order.push(s as u32);
        let mut head = 0;
        while head < order.len() {
            let x = order[head] as usize;
            head += 1;
            if 2 * dist[x] as usize + 1 >= best {
                break;
            }
            for &y in g.neighbors(x) {
                let y = y as usize;
                if dist[y] == u32::MAX {
                    dist[y] = dist[x] + 1;
                    parent[y] = x as u32;
                    order.push(y as u32);
                } else if parent[x] != y as u32 {
                    best = best.min((dist[x] + dist[y] + 1) as usize);
                }
            }
        }
        for &v in &order {
            dist[v as usize] = u32::MAX;
            parent[v as usize] = u32::MAX;
        }
        order.clear();
        if best == 3 {
            break;
        }
    }
    (best < bound).then_some(best)
}

/// Moore bound `M(k, g)`.
pub fn moore_bound(k: usize, g: usize) -> Result<u64, VerifyError> {
    if k < 2 || g < 3 {
        return Err(VerifyError::MooreDomain { k, g });
    }
    let over = || VerifyError::MooreOverflow { k, g };
    let geometric = |terms: usize| -> Result<u64, VerifyError> {
        let mut sum = 0u64;
        let mut p = 1u64;
        for i in 0..terms {
            if i > 0 {
                p = p.checked_mul(k as u64 - 1).ok_or_else(over)?;
            }
            sum = sum.checked_add(p).ok_or_else(over)?;
        }
        Ok(sum)
    };
    if g % 2 == 1 {
        let s = geometric((g - 3) / 2 + 1)?;
        (k as u64).checked_mul(s).and_then(|x| x.checked_add(1)).ok_or_else(over)
    } else {
        geometric((g - 2) / 2 + 1)?.checked_mul(2).ok_or_else(over)
    }
}

/// Counts of cycles of one fixed length through each vertex and edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleCensus {
    pub length: usize,
    pub cycles: u64,
    pub per_vertex: Vec<u64>,
    /// Indexed like `SimpleGraph::edges()`.
    pub per_edge: Vec<u64>,
}

impl CycleCensus {
    /// Both handshake identities: vertex and edge incidences each sum to
    /// `length * cycles`.
    pub fn handshake_holds(&self) -> bool {
        let total = self.length as u64 * self.cycles;
        self.per_vertex.iter().sum::<u64>() == total && self.per_edge.iter().sum::<u64>() == total
    }

    pub fn lambda_v(&self) -> Lambda {
        Lambda::common(&self.per_vertex)
    }

    pub fn lambda_e(&self) -> Lambda {
        Lambda::common(&self.per_edge)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Lambda {
    Regular(u64),
    Irregular,
    Acyclic,
    NotComputed,
}

impl Lambda {
    fn common(xs: &[u64]) -> Lambda {
        match xs.first() {
            Some(&x) if xs.iter().all(|&y| y == x) => Lambda::Regular(x),
            Some(_) => Lambda::Irregular,
            None => Lambda::Acyclic,
        }
    }

    pub fn value(&self) -> Option<u64> {
        match *self {
            Lambda::Regular(x) => Some(x),
            _ => None,
        }
    }
}

/// Enumerates every cycle of length `len` once: it starts at its smallest
/// vertex and its second vertex is smaller than its last.
pub fn cycle_census(g: &SimpleGraph, len: usize) -> CycleCensus {
    let n = g.n();
    let mut offset = vec![0usize; n + 1];
    for v in 0..n {
        offset[v + 1] = offset[v] + g.degree(v);
    }
    let mut per_arc = vec![0u64; offset[n]];
    let mut per_vertex = vec![0u64; n];
    let mut cycles = 0u64;
    if len >= 3 {
        let mut on_path = vec![false; n];
        let mut path = Vec::with_capacity(len);
        let mut dist = vec![u32::MAX; n];
        for s in 0..n {
            bfs_above(g, s, len / 2 + 1, &mut dist);
            path.push(s);
            on_path[s] = true;
            let mut visit = |path: &[usize]| {
                cycles += 1;
                for i in 0..len {
                    let (a, b) = (path[i], path[(i + 1) % len]);
                    per_vertex[a] += 1;
                    let (a, b) = (a.min(b), a.max(b));
                    let p = g.neighbors(a).binary_search(&(b as u32)).expect("edge");
                    per_arc[offset[a] + p] += 1;
                }
            };
            extend_paths(g, s, len, &dist, &mut path, &mut on_path, true, &mut |p| {
                visit(p);
                true
            });
            path.clear();
            on_path[s] = false;
        }
    }
    let per_edge = g
        .edges()
        .map(|(u, v)| per_arc[offset[u] + g.neighbors(u).binary_search(&(v as u32)).expect("edge")])
        .collect();
    CycleCensus { length: len, cycles, per_vertex, per_edge }
}

/// BFS from `s` through vertices `>= s`, up to `depth`; others get MAX.
fn bfs_above(g: &SimpleGraph, s: usize, depth: usize, dist: &mut [u32]) {
    dist.fill(u32::MAX);
    dist[s] = 0;
    let mut frontier = vec![s];
    let mut d = 0;
    while !frontier.is_empty() && d < depth {
        d += 1;
        let mut next = Vec::new();
        for x in frontier {
            for &y in g.neighbors(x) {
                let y = y as usize;
                if y > s && dist[y] == u32::MAX {
                    dist[y] = d as u32;
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
}

/// Depth-first extension of `path` (starting at `s`, through vertices above
/// `s`) to closed cycles of exactly `len` edges. `f` returns false to stop.
#[allow(clippy::too_many_arguments)]
fn extend_paths(
    g: &SimpleGraph,
    s: usize,
    len: usize,
    dist: &[u32],
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    oriented: bool,
    f: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    let x = *path.last().expect("non-empty");
    if path.len() == len {
        if g.has_edge(x, s) && (!oriented || path[1] < x) {
            return f(path);
        }
        return true;
    }
    let remaining = len - path.len();
    for &y in g.neighbors(x) {
        let y = y as usize;
        if y <= s || on_path[y] || dist[y] as usize > remaining {
            continue;
        }
        path.push(y);
        on_path[y] = true;
        let go_on = extend_paths(g, s, len, dist, path, on_path, oriented, f);
        on_path[y] = false;
        path.pop();
        if !go_on {
            return false;
        }
    }
    true
}

/// λ_v and λ_e for the girth cycles; `Acyclic` for forests.
pub fn girth_cycle_regularity(g: &SimpleGraph) -> (Lambda, Lambda) {
    match girth(g) {
        None => (Lambda::Acyclic, Lambda::Acyclic),
        Some(len) => {
            let c = cycle_census(g, len);
            (c.lambda_v(), c.lambda_e())
        }
    }
}

/// Whether some cycle has exactly `len` edges.
pub fn has_cycle_of_length(g: &SimpleGraph, len: usize) -> bool {
    if len < 3 || len > g.n() {
        return false;
    }
    if len % 2 == 1 && g.is_bipartite() {
        return false;
    }
    let n = g.n();
    let mut on_path = vec![false; n];
    let mut dist = vec![u32::MAX; n];
    let mut path = Vec::with_capacity(len);
    for s in 0..n {
        bfs_above(g, s, len / 2 + 1, &mut dist);
        path.push(s);
        on_path[s] = true;
        let mut found = false;
        extend_paths(g, s, len, &dist, &mut path, &mut on_path, false, &mut |_| {
            found = true;
            false
        });
        path.clear();
        on_path[s] = false;
        if found {
            return true;
        }
    }
    false
}

/// Which of the more expensive checks [`classify`] performs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Targets {
    pub lambda: bool,
    pub g_plus_1: bool,
    pub canonical: bool,
}

impl Targets {
    pub fn all() -> Self {
        Targets { lambda: true, g_plus_1: true, canonical: true }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphReport {
    pub n: usize,
    pub edges: usize,
    pub k: Option<usize>,
    pub min_degree: usize,
    pub max_degree: usize,
    pub girth: Option<usize>,
    pub connected: bool,
    pub bipartite: bool,
    pub lambda_v: Lambda,
    pub lambda_e: Lambda,
    pub handshake_ok: Option<bool>,
    pub has_g_plus_1_cycle: Option<bool>,
    pub canonical_digest: Option<String>,
    pub moore_deficiency: Option<i64>,
}

pub fn classify(g: &SimpleGraph, targets: Targets) -> GraphReport {
    let k = g.regular_degree().filter(|_| g.n() > 0);
    let (min_degree, max_degree) = g.min_max_degree();
    let gi = girth(g);
    let (mut lambda_v, mut lambda_e, mut handshake_ok) = (Lambda::NotComputed, Lambda::NotComputed, None);
    if targets.lambda {
        match gi {
            None => (lambda_v, lambda_e) = (Lambda::Acyclic, Lambda::Acyclic),
            Some(len) => {
                let c = cycle_census(g, len);
                handshake_ok = Some(c.handshake_holds());
                lambda_v = c.lambda_v();
                lambda_e = c.lambda_e();
            }
        }
    }
    let has_g_plus_1_cycle = match (targets.g_plus_1, gi) {
        (true, Some(len)) => Some(has_cycle_of_length(g, len + 1)),
        _ => None,
    };
    let canonical_digest = targets.canonical.then(|| canonical_digest(g));
    let moore_deficiency = match (k, gi) {
        (Some(k), Some(len)) => moore_bound(k, len).ok().map(|m| g.n() as i64 - m as i64),
        _ => None,
    };
    GraphReport {
        n: g.n(),
        edges: g.edge_count(),
        k,
        min_degree,
        max_degree,
        girth: gi,
        connected: g.is_connected(),
        bipartite: g.is_bipartite(),
        lambda_v,
        lambda_e,
        handshake_ok,
        has_g_plus_1_cycle,
        canonical_digest,
        moore_deficiency,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Cycles of length `len` by brute force over vertex sequences; each cycle
    /// is counted once via its sorted vertex set plus edge set.
    fn brute_cycles(g: &SimpleGraph, len: usize) -> Vec<Vec<usize>> {
        let mut found = std::collections::BTreeSet::new();
        fn rec(g: &SimpleGraph, len: usize, path: &mut Vec<usize>, found: &mut std::collections::BTreeSet<Vec<(usize, usize)>>) {
            if path.len() == len {
                if g.has_edge(path[len - 1], path[0]) {
                    let mut es: Vec<(usize, usize)> =
                        (0..len).map(|i| (path[i].min(path[(i + 1) % len]), path[i].max(path[(i + 1) % len]))).collect();
                    es.sort();
                    found.insert(es);
                }
                return;
            }
            let x = *path.last().unwrap();
            for &y in g.neighbors(x) {
                let y = y as usize;
                if !path.contains(&y) {
                    path.push(y);
                    rec(g, len, path, found);
                    path.pop();
                }
            }
        }
        for s in 0..g.n() {
            rec(g, len, &mut vec![s], &mut found);
        }
        found
            .into_iter()
            .map(|es| {
                let mut vs: Vec<usize> = es.iter().flat_map(|&(a, b)| [a, b]).collect();
                vs.sort();
                vs.dedup();
                vs
            })
            .collect()
    }

    fn brute_girth(g: &SimpleGraph) -> Option<usize> {
        (3..=g.n()).find(|&l| !brute_cycles(g, l).is_empty())
    }

    #[test]
    fn girth_examples() {
        assert_eq!(girth(&SimpleGraph::petersen()), Some(5));
        assert_eq!(girth(&SimpleGraph::cycle(6)), Some(6));
        assert_eq!(girth(&SimpleGraph::heawood()), Some(6));
        let tree = SimpleGraph::from_edges(5, [(0, 1), (1, 2), (1, 3), (3, 4)]).unwrap();
        assert_eq!(girth(&tree), None);
        assert_eq!(girth(&SimpleGraph::new(0)), None);
    }

    #[test]
    fn moore_values() {
        assert_eq!(moore_bound(3, 5).unwrap(), 10);
        assert_eq!(moore_bound(3, 12).unwrap(), 126);
        assert_eq!(moore_bound(4, 12).unwrap(), 728);
        assert_eq!(moore_bound(5, 12).unwrap(), 2730);
        assert_eq!(moore_bound(6, 12).unwrap(), 7812);
        assert!(moore_bound(1, 5).is_err());
        assert!(moore_bound(3, 2).is_err());
        // Independent closed forms for k >= 3: odd g = 2s+1 gives
        // (k(k-1)^s - 2)/(k-2); even g = 2s gives 2((k-1)^s - 1)/(k-2).
        for k in 2u64..=14 {
            for g in 3u64..=12 {
                let expected = if k == 2 {
                    g
                } else if g % 2 == 1 {
                    let s = (g - 1) / 2;
                    (k * (k - 1).pow(s as u32) - 2) / (k - 2)
                } else {
                    let s = g / 2;
                    2 * ((k - 1).pow(s as u32) - 1) / (k - 2)
                };
                assert_eq!(moore_bound(k as usize, g as usize).unwrap(), expected, "k={k} g={g}");
            }
        }
    }

    #[test]
    fn petersen_census() {
        let p = SimpleGraph::petersen();
        let brute = brute_cycles(&p, 5);
        assert_eq!(brute.len(), 12);
        let c = cycle_census(&p, 5);
        assert_eq!(c.cycles, 12);
        assert!(c.handshake_holds());
        assert_eq!(girth_cycle_regularity(&p), (Lambda::Regular(6), Lambda::Regular(4)));
        assert!(has_cycle_of_length(&p, 6));
        assert!(!has_cycle_of_length(&p, 3));
        assert!(!has_cycle_of_length(&p, 4));
    }

    #[test]
    fn heawood_census() {
        let h = SimpleGraph::heawood();
        let six = brute_cycles(&h, 6).len() as u64;
        let c = cycle_census(&h, 6);
        assert_eq!(c.cycles, six);
        assert_eq!(c.lambda_e(), Lambda::Regular(six * 6 / 21));
        assert!(c.handshake_holds());
        assert!(!has_cycle_of_length(&h, 7));
    }

    #[test]
    fn cycles_and_forests() {
        assert!(has_cycle_of_length(&SimpleGraph::cycle(7), 7));
        assert!(!has_cycle_of_length(&SimpleGraph::heawood(), 5));
        let star = SimpleGraph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(girth_cycle_regularity(&star), (Lambda::Acyclic, Lambda::Acyclic));
    }

    #[test]
    fn girth_matches_brute_force_on_small_graphs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let n = rng.gen_range(1..10);
            let p = rng.gen_range(0.1..0.6);
            let mut g = SimpleGraph::new(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(p) {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            assert_eq!(girth(&g), brute_girth(&g));
            if let Some(len) = girth(&g) {
                let c = cycle_census(&g, len);
                assert_eq!(c.cycles as usize, brute_cycles(&g, len).len());
                assert!(c.handshake_holds());
                for l in len..=len + 2 {
                    assert_eq!(has_cycle_of_length(&g, l), !brute_cycles(&g, l).is_empty());
                }
            }
        }
    }

    #[test]
    fn classify_reports() {
        let r = classify(&SimpleGraph::petersen(), Targets::all());
        assert_eq!((r.n, r.k, r.girth, r.bipartite, r.connected), (10, Some(3), Some(5), false, true));
        assert_eq!(r.lambda_v, Lambda::Regular(6));
        assert_eq!(r.moore_deficiency, Some(0));
        assert_eq!(r.has_g_plus_1_cycle, Some(true));
        assert_eq!(r.handshake_ok, Some(true));
        let e = classify(&SimpleGraph::new(0), Targets::all());
        assert_eq!(e.girth, None);
        assert_eq!(e.k, None);
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(serde_json::from_str::<GraphReport>(&json).unwrap(), r);
    }
}

//! Pregraphs: multigraphs with loops, parallel edges and semi-edges, seen
//! through their darts.
//!
//! Darts are numbered in edge order. A full edge `u v` (loops included)
//! contributes the forward dart `u -> v` followed by its reverse; a semi-edge
//! contributes a single self-inverse dart.

use std::collections::VecDeque;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::graph::SimpleGraph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PregraphError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("pregraph is not connected")]
    Disconnected,
    #[error("pregraph must have at least one vertex")]
    NoVertices,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Edge {
    /// `u v`; a loop when `u == v`.
    Full(usize, usize),
    Semi(usize),
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        matches!(*self, Edge::Full(u, v) if u == v)
    }

    pub fn is_semi(&self) -> bool {
        matches!(self, Edge::Semi(_))
    }

    /// Endpoints, with `v == u` for loops and semi-edges.
    pub fn ends(&self) -> (usize, usize) {
        match *self {
            Edge::Full(u, v) => (u, v),
            Edge::Semi(u) => (u, u),
        }
    }

    fn normalized(&self) -> Edge {
        match *self {
            Edge::Full(u, v) => Edge::Full(u.min(v), u.max(v)),
            e => e,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Dart {
    pub tail: usize,
    pub head: usize,
    pub inverse: usize,
    pub edge: usize,
    pub semi: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pregraph {
    n: usize,
    edges: Vec<Edge>,
    darts: Vec<Dart>,
    first_dart: Vec<usize>,
    out: Vec<Vec<usize>>,
}

impl Pregraph {
    pub fn new(n: usize, edges: Vec<Edge>) -> Result<Self, PregraphError> {
        if n == 0 {
            return Err(PregraphError::NoVertices);
        }
        let mut darts = Vec::new();
        let mut first_dart = Vec::with_capacity(edges.len());
        let mut out = vec![Vec::new(); n];
        for (ei, e) in edges.iter().enumerate() {
            let (u, v) = e.ends();
            for x in [u, v] {
                if x >= n {
                    return Err(PregraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            let d = darts.len();
            first_dart.push(d);
            match *e {
                Edge::Full(u, v) => {
                    darts.push(Dart { tail: u, head: v, inverse: d + 1, edge: ei, semi: false });
                    darts.push(Dart { tail: v, head: u, inverse: d, edge: ei, semi: false });
                    out[u].push(d);
                    out[v].push(d + 1);
                }
                Edge::Semi(u) => {
                    darts.push(Dart { tail: u, head: u, inverse: d, edge: ei, semi: true });
                    out[u].push(d);
                }
            }
        }
        Ok(Pregraph { n, edges, darts, first_dart, out })
    }

    pub fn edgeless(n: usize) -> Result<Self, PregraphError> {
        Self::new(n, Vec::new())
    }

    /// Copy with one more edge appended (existing dart indices unchanged).
    pub fn with_edge(&self, e: Edge) -> Result<Self, PregraphError> {
        let mut edges = self.edges.clone();
        edges.push(e);
        Self::new(self.n, edges)
    }

    /// Parses the pregraph text format. `/` is accepted as a line separator
    /// so small graphs can be written inline.
    pub fn parse(text: &str) -> Result<Self, PregraphError> {
        let mut lines = text
            .lines()
            .enumerate()
            .flat_map(|(i, l)| l.split('/').map(move |p| (i + 1, p.trim())))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or(PregraphError::Parse { line: 1, msg: "empty input".into() })?;
        let mut parts = header.split_whitespace();
        let n = match (parts.next(), parts.next().map(str::parse::<usize>), parts.next()) {
            (Some("pregraph"), Some(Ok(n)), None) => n,
            _ => return Err(PregraphError::Parse { line: hline, msg: "expected `pregraph <n>`".into() }),
        };
        let mut edges = Vec::new();
        for (line, l) in lines {
            let bad = |msg: &str| PregraphError::Parse { line, msg: msg.into() };
            let toks: Vec<&str> = l.split_whitespace().collect();
            let vertex = |s: &str| s.parse::<usize>().map_err(|_| bad("vertex is not an integer"));
            let e = match toks.as_slice() {
                [u, ";"] => Edge::Semi(vertex(u)?),
                [u] if u.ends_with(';') => Edge::Semi(vertex(&u[..u.len() - 1])?),
                [u, v] => Edge::Full(vertex(u)?, vertex(v)?),
                _ => return Err(bad("expected `u v` or `u ;`")),
            };
            edges.push(e);
        }
        Self::new(n, edges)
    }

    /// Parses blank-line separated records. Errors carry the record index;
    /// line numbers count from the start of `text`.
    pub fn parse_many(text: &str) -> Result<Vec<Self>, (usize, PregraphError)> {
        let mut out = Vec::new();
        let mut block = String::new();
        let mut first = 0;
        let lines: Vec<&str> = text.lines().collect();
        for (i, l) in lines.iter().enumerate() {
            if !l.trim().is_empty() {
                if block.is_empty() {
                    first = i;
                }
                block.push_str(l);
                block.push('\n');
            }
            if (l.trim().is_empty() || i + 1 == lines.len()) && !block.is_empty() {
                let g = Self::parse(&block).map_err(|e| match e {
                    PregraphError::Parse { line, msg } => PregraphError::Parse { line: line + first, msg },
                    other => other,
                });
                out.push(g.map_err(|e| (out.len(), e))?);
                block.clear();
            }
        }
        Ok(out)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("pregraph {}\n", self.n);
        for e in &self.edges {
            match *e {
                Edge::Full(u, v) => writeln!(s, "{u} {v}"),
                Edge::Semi(u) => writeln!(s, "{u} ;"),
            }
            .expect("string write");
        }
        s
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn darts(&self) -> &[Dart] {
        &self.darts
    }

    #[inline]
    pub fn dart(&self, d: usize) -> &Dart {
        &self.darts[d]
    }

    /// Darts with tail `v`, ascending.
    pub fn out_darts(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    /// The forward dart of edge `e` (the only dart of a semi-edge).
    pub fn edge_dart(&self, e: usize) -> usize {
        self.first_dart[e]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.out[v].len()
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        self.out.iter().map(Vec::len).collect()
    }

    pub fn is_k_regular(&self, k: usize) -> bool {
        self.out.iter().all(|o| o.len() == k)
    }

    pub fn regular_degree(&self) -> Option<usize> {
        let k = self.degree(0);
        self.is_k_regular(k).then_some(k)
    }

    /// Connectivity through full non-loop edges.
    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        seen[0] = true;
        let mut stack = vec![0];
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for &d in &self.out[x] {
                let h = self.darts[d].head;
                if !seen[h] {
                    seen[h] = true;
                    count += 1;
                    stack.push(h);
                }
            }
        }
        count == self.n
    }

    /// BFS spanning tree from vertex 0, scanning darts in index order.
    pub fn spanning_tree(&self) -> Result<SpanningTree, PregraphError> {
        let mut parent_dart = vec![None; self.n];
        let mut depth = vec![usize::MAX; self.n];
        let mut in_tree = vec![false; self.edges.len()];
        depth[0] = 0;
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for &d in &self.out[x] {
                let dart = self.darts[d];
                if dart.semi || dart.head == x || depth[dart.head] != usize::MAX {
                    continue;
                }
                depth[dart.head] = depth[x] + 1;
                parent_dart[dart.head] = Some(d);
                in_tree[dart.edge] = true;
                queue.push_back(dart.head);
            }
        }
        if depth.contains(&usize::MAX) {
            return Err(PregraphError::Disconnected);
        }
        let edges = (0..self.edges.len()).filter(|&e| in_tree[e]).collect();
        Ok(SpanningTree { edges, in_tree, parent_dart, depth })
    }

    /// One dart per non-tree edge (the forward dart), ascending.
    pub fn useful_darts(&self, tree: &SpanningTree) -> Vec<usize> {
        (0..self.edges.len()).filter(|&e| !tree.in_tree[e]).map(|e| self.first_dart[e]).collect()
    }

    fn multiplicity(&self) -> Multiplicity {
        let n = self.n;
        let mut m = Multiplicity { full: vec![0; n * n], loops: vec![0; n], semis: vec![0; n], n };
        for e in &self.edges {
            match *e {
                Edge::Full(u, v) if u == v => m.loops[u] += 1,
                Edge::Full(u, v) => {
                    m.full[u * n + v] += 1;
                    m.full[v * n + u] += 1;
                }
                Edge::Semi(u) => m.semis[u] += 1,
            }
        }
        m
    }

    /// Vertex permutations preserving edge, loop and semi-edge multiplicities,
    /// in lexicographic order (identity first).
    pub fn vertex_automorphisms(&self, limit: usize, budget: Duration) -> (Vec<Vec<usize>>, bool) {
        let m = self.multiplicity();
        let start = Instant::now();
        let mut out = Vec::new();
        let mut perm = Vec::with_capacity(self.n);
        let mut used = vec![false; self.n];
        let complete = vertex_perms(&m, &mut perm, &mut used, &mut out, limit, start, budget, &|_| true);
        (out, complete)
    }

    /// Edge automorphisms that map tree edges onto tree edges. Parallel
    /// non-tree edges may be permuted among themselves; loop darts keep their
    /// orientation. Identity first; at most `limit` results within `budget`.
    pub fn edge_automorphisms(&self, tree: &SpanningTree, limit: usize, budget: Duration) -> EdgeAutomorphisms {
        let limit = limit.max(1);
        let start = Instant::now();
        let m = self.multiplicity();
        let n = self.n;
        // bundle id -> tree edge (if any) and sorted non-tree edges
        let bundle_of = |e: &Edge| e.normalized();
        let mut bundles: std::collections::BTreeMap<Edge, (Option<usize>, Vec<usize>)> = Default::default();
        for (i, e) in self.edges.iter().enumerate() {
            let entry = bundles.entry(bundle_of(e)).or_default();
            if tree.in_tree[i] {
                entry.0 = Some(i);
            } else {
                entry.1.push(i);
            }
        }
        let tree_ok = |perm: &[usize]| {
            let k = perm.len();
            let u = k - 1;
            // Each tree edge between already-mapped vertices must land on a tree edge.
            tree.edges.iter().all(|&e| {
                let (a, b) = self.edges[e].ends();
                if a.max(b) != u {
                    return true;
                }
                let image = Edge::Full(perm[a].min(perm[b]), perm[a].max(perm[b]));
                bundles.get(&image).is_some_and(|b| b.0.is_some())
            })
        };
        let mut sigmas = Vec::new();
        let mut perm = Vec::with_capacity(n);
        let mut used = vec![false; n];
        let mut complete = vertex_perms(&m, &mut perm, &mut used, &mut sigmas, usize::MAX, start, budget, &tree_ok);

        let mut autos = Vec::new();
        'sigma: for sigma in &sigmas {
            // For every bundle, its non-tree edges map onto the image bundle's.
            let mut slots: Vec<(&[usize], &[usize])> = Vec::new();
            let mut edge_perm = vec![usize::MAX; self.edges.len()];
            for (key, (t, rest)) in &bundles {
                let image = match *key {
                    Edge::Full(u, v) => Edge::Full(sigma[u], sigma[v]).normalized(),
                    Edge::Semi(u) => Edge::Semi(sigma[u]),
                };
                let (it, irest) = &bundles[&image];
                if let Some(t) = t {
                    edge_perm[*t] = it.expect("checked by tree_ok");
                }
                slots.push((rest.as_slice(), irest.as_slice()));
            }
            let mut choice: Vec<Vec<usize>> = slots.iter().map(|(s, _)| (0..s.len()).collect()).collect();
            loop {
                if autos.len() >= limit {
                    complete = false;
                    break 'sigma;
                }
                if start.elapsed() > budget {
                    complete = false;
                    break 'sigma;
                }
                for ((src, dst), c) in slots.iter().zip(&choice) {
                    for (i, &e) in src.iter().enumerate() {
                        edge_perm[e] = dst[c[i]];
                    }
                }
                autos.push(self.induced_dart_map(sigma, &edge_perm));
                // Advance the rightmost bundle permutation that has a successor.
                let mut advanced = false;
                for c in choice.iter_mut().rev() {
                    if next_permutation(c) {
                        advanced = true;
                        break;
                    }
                    c.sort_unstable();
                }
                if !advanced {
                    break;
                }
            }
        }
        EdgeAutomorphisms { autos, complete }
    }

    fn induced_dart_map(&self, sigma: &[usize], edge_perm: &[usize]) -> EdgeAutomorphism {
        let mut dart_perm = vec![0; self.darts.len()];
        for (e, &f) in edge_perm.iter().enumerate() {
            let (d, df) = (self.first_dart[e], self.first_dart[f]);
            match self.edges[e] {
                Edge::Semi(_) => dart_perm[d] = df,
                Edge::Full(u, v) => {
                    let (fu, _) = self.edges[f].ends();
                    // Loops keep orientation; otherwise follow the tail.
                    let same = u == v || sigma[u] == fu;
                    dart_perm[d] = if same { df } else { df + 1 };
                    dart_perm[d + 1] = if same { df + 1 } else { df };
                }
            }
        }
        EdgeAutomorphism { vertex_perm: sigma.to_vec(), edge_perm: edge_perm.to_vec(), dart_perm }
    }

    /// Colored simple graph encoding used for isomorphism testing. Original
    /// vertices get color 0; each bundle of `m >= 1` parallel edges becomes a
    /// subdivision vertex of color `100 + m`; `l` loops at a vertex become a
    /// pendant of color `200 + l`; `s` semi-edges a pendant of color `300 + s`.
    pub fn gadget_graph(&self) -> (SimpleGraph, Vec<u32>) {
        let m = self.multiplicity();
        let n = self.n;
        let mut colors = vec![0u32; n];
        let mut edges = Vec::new();
        let mut add = |colors: &mut Vec<u32>, c: u32, ends: &[usize]| {
            let x = colors.len();
            colors.push(c);
            for &e in ends {
                edges.push((e, x));
            }
        };
        for u in 0..n {
            for v in u + 1..n {
                let k = m.full[u * n + v];
                if k > 0 {
                    add(&mut colors, 100 + k as u32, &[u, v]);
                }
            }
            if m.loops[u] > 0 {
                add(&mut colors, 200 + m.loops[u] as u32, &[u]);
            }
            if m.semis[u] > 0 {
                add(&mut colors, 300 + m.semis[u] as u32, &[u]);
            }
        }
        let g = SimpleGraph::from_edges(colors.len(), edges).expect("gadget graph is simple");
        (g, colors)
    }

    /// Isomorphism-invariant encoding of the pregraph.
    pub fn canonical_form(&self) -> Vec<u8> {
        let (g, colors) = self.gadget_graph();
        crate::verify::canonical_form(&g, Some(&colors))
    }
}

struct Multiplicity {
    n: usize,
    full: Vec<usize>,
    loops: Vec<usize>,
    semis: Vec<usize>,
}

#[allow(clippy::too_many_arguments)]
fn vertex_perms(
    m: &Multiplicity,
    perm: &mut Vec<usize>,
    used: &mut [bool],
    out: &mut Vec<Vec<usize>>,
    limit: usize,
    start: Instant,
    budget: Duration,
    extra: &dyn Fn(&[usize]) -> bool,
) -> bool {
    let n = m.n;
    let u = perm.len();
    if u == n {
        if out.len() >= limit {
            return false;
        }
        out.push(perm.clone());
        return true;
    }
    if start.elapsed() > budget {
        return false;
    }
    for c in 0..n {
        if used[c] || m.loops[u] != m.loops[c] || m.semis[u] != m.semis[c] {
            continue;
        }
        if (0..n).map(|w| m.full[u * n + w]).sum::<usize>() != (0..n).map(|w| m.full[c * n + w]).sum::<usize>() {
            continue;
        }
        if !(0..u).all(|w| m.full[u * n + w] == m.full[c * n + perm[w]]) {
            continue;
        }
        perm.push(c);
        used[c] = true;
        let ok = !extra(perm) || vertex_perms(m, perm, used, out, limit, start, budget, extra);
        used[c] = false;
        perm.pop();
        if !ok {
            return false;
        }
    }
    true
}

/// Rearranges into the next lexicographic permutation; false when `v` was
/// already the last one.
pub(crate) fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let Some(i) = (0..v.len() - 1).rev().find(|&i| v[i] < v[i + 1]) else {
        return false;
    };
    let j = (i + 1..v.len()).rev().find(|&j| v[j] > v[i]).expect("exists");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningTree {
    /// Tree edge indices, ascending.
    pub edges: Vec<usize>,
    pub in_tree: Vec<bool>,
    /// Dart from the parent into each vertex; `None` for the root.
    pub parent_dart: Vec<Option<usize>>,
    pub depth: Vec<usize>,
}

impl SpanningTree {
    /// Number of tree edges on the tree path between `u` and `v`.
    pub fn path_length(&self, g: &Pregraph, mut u: usize, mut v: usize) -> usize {
        let mut len = 0;
        while self.depth[u] > self.depth[v] {
            u = g.dart(self.parent_dart[u].expect("non-root")).tail;
            len += 1;
        }
        while self.depth[v] > self.depth[u] {
            v = g.dart(self.parent_dart[v].expect("non-root")).tail;
            len += 1;
        }
        while u != v {
            u = g.dart(self.parent_dart[u].expect("non-root")).tail;
            v = g.dart(self.parent_dart[v].expect("non-root")).tail;
            len += 2;
        }
        len
    }

    pub fn is_tree_dart(&self, g: &Pregraph, d: usize) -> bool {
        self.in_tree[g.dart(d).edge]
    }
}

/// An adjacency-preserving permutation of edges with its induced dart map.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgeAutomorphism {
    pub vertex_perm: Vec<usize>,
    pub edge_perm: Vec<usize>,
    pub dart_perm: Vec<usize>,
}

impl EdgeAutomorphism {
    pub fn is_identity(&self) -> bool {
        self.dart_perm.iter().enumerate().all(|(i, &d)| i == d)
    }
}

#[derive(Debug, Clone)]
pub struct EdgeAutomorphisms {
    pub autos: Vec<EdgeAutomorphism>,
    /// False when the limit or time budget cut enumeration short.
    pub complete: bool,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn many_records() {
        let gs = Pregraph::parse_many("pregraph 1\n0 0\n\n\npregraph 2\n0 1\n0 1\n0 1\n").unwrap();
        assert_eq!(gs.len(), 2);
        assert_eq!(gs[1].edges().len(), 3);
        assert!(Pregraph::parse_many("").unwrap().is_empty());
        let err = Pregraph::parse_many("pregraph 1\n0 0\n\npregraph 2\n0 x\n").unwrap_err();
        assert!(matches!(err, (1, PregraphError::Parse { line: 5, .. })), "{err:?}");
    }

    fn dumbbell() -> Pregraph {
        Pregraph::parse("pregraph 2 / 0 1 / 0 0 / 1 1").unwrap()
    }

    const LONG: Duration = Duration::from_secs(10);

    #[test]
    fn parse_dumbbell() {
        let g = dumbbell();
        assert_eq!(g.n(), 2);
        assert_eq!(g.edges(), &[Edge::Full(0, 1), Edge::Full(0, 0), Edge::Full(1, 1)]);
        assert_eq!(g.darts().len(), 6);
        assert!(g.is_k_regular(3));
        assert!(g.is_connected());
        assert_eq!(Pregraph::parse(&g.to_text()).unwrap(), g);
    }

    #[test]
    fn semi_edges_and_parallels() {
        let g = Pregraph::parse("pregraph 1\n0 ;\n").unwrap();
        assert_eq!(g.degree_sequence(), vec![1]);
        assert!(g.dart(0).semi);
        assert_eq!(g.dart(0).inverse, 0);
        let g = Pregraph::parse("pregraph 1\n0 0\n0 ;\n").unwrap();
        assert_eq!(g.degree(0), 3);
        let g = Pregraph::parse("pregraph 2\n0 1\n0 1\n").unwrap();
        assert_eq!(g.degree_sequence(), vec![2, 2]);
        let g = Pregraph::parse("pregraph 2\n0 0\n1 1\n").unwrap();
        assert!(!g.is_connected());
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(Pregraph::parse("pregraph 2\n0 2\n"), Err(PregraphError::VertexOutOfRange { vertex: 2, n: 2 })));
        assert!(matches!(Pregraph::parse("pregraph 2\n0 1 1\n"), Err(PregraphError::Parse { line: 2, .. })));
        assert!(matches!(Pregraph::parse("graph 2\n"), Err(PregraphError::Parse { line: 1, .. })));
        assert!(matches!(Pregraph::parse(""), Err(PregraphError::Parse { .. })));
        assert!(matches!(Pregraph::parse("pregraph 0\n"), Err(PregraphError::NoVertices)));
    }

    #[test]
    fn trees() {
        let g = dumbbell();
        let t = g.spanning_tree().unwrap();
        assert_eq!(t.edges, vec![0]);
        assert_eq!(g.useful_darts(&t), vec![2, 4]);
        let three = Pregraph::parse("pregraph 3\n0 1\n0 1\n1 2\n1 2\n0 0\n2 2\n").unwrap();
        let t = three.spanning_tree().unwrap();
        assert_eq!(t.edges.len(), 2);
        assert_eq!(t.path_length(&three, 0, 2), 2);
        assert!(matches!(Pregraph::edgeless(2).unwrap().spanning_tree(), Err(PregraphError::Disconnected)));
        let path = Pregraph::parse("pregraph 3\n0 1\n1 2\n").unwrap();
        let t = path.spanning_tree().unwrap();
        assert!(path.useful_darts(&t).is_empty());
    }

    #[test]
    fn dumbbell_edge_automorphisms() {
        let g = dumbbell();
        let t = g.spanning_tree().unwrap();
        let a = g.edge_automorphisms(&t, 200, LONG);
        assert!(a.complete);
        assert_eq!(a.autos.len(), 2);
        assert!(a.autos[0].is_identity());
        let swap = &a.autos[1];
        assert_eq!(swap.edge_perm, vec![0, 2, 1]);
        assert_eq!(swap.dart_perm, vec![1, 0, 4, 5, 2, 3]);
    }

    #[test]
    fn asymmetric_tree_has_only_identity() {
        // Legs of lengths 1, 2 and 3 from vertex 0.
        let g = Pregraph::parse("pregraph 7\n0 1\n0 2\n2 3\n0 4\n4 5\n5 6\n").unwrap();
        let t = g.spanning_tree().unwrap();
        let a = g.edge_automorphisms(&t, 200, LONG);
        assert_eq!(a.autos.len(), 1);
        assert!(a.complete);
    }

    #[test]
    fn edge_autos_limit() {
        let g = Pregraph::parse("pregraph 2\n0 1\n0 1\n0 1\n0 1\n0 1\n").unwrap();
        let t = g.spanning_tree().unwrap();
        let all = g.edge_automorphisms(&t, 1000, LONG);
        // 2 vertex maps x 4! orderings of the non-tree edges.
        assert_eq!(all.autos.len(), 48);
        assert!(all.complete);
        let few = g.edge_automorphisms(&t, 5, LONG);
        assert_eq!(few.autos.len(), 5);
        assert!(!few.complete);
    }

    #[test]
    fn next_perm() {
        let mut v = vec![0, 1, 2];
        let mut count = 1;
        while next_permutation(&mut v) {
            count += 1;
        }
        assert_eq!(count, 6);
        assert_eq!(v, vec![2, 1, 0]);
    }
}

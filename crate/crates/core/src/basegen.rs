//! Exhaustive generation of connected k-regular pregraphs: loop-free
//! multigraphs by degree distribution, then every completion with loops and
//! semi-edges, deduplicated by canonical form.

use std::collections::HashSet;

use thiserror::Error;

use crate::pregraph::{Edge, Pregraph};

pub const DEFAULT_CAP: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BaseGenError {
    #[error("order {n} exceeds the generation cap {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("vertex {vertex} has degree {degree}, above k = {k}")]
    DegreeTooHigh { vertex: usize, degree: usize, k: usize },
    #[error("vertex {vertex} has odd deficiency and semi-edges are disabled")]
    OddDeficiency { vertex: usize },
    #[error("degree distribution is empty")]
    EmptyDistribution,
}

/// `v[i]` counts vertices of degree `i + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DegreeDistribution {
    pub v: Vec<usize>,
}

impl DegreeDistribution {
    pub fn n(&self) -> usize {
        self.v.iter().sum()
    }

    /// Vertex degrees, highest first.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d = Vec::with_capacity(self.n());
        for (i, &c) in self.v.iter().enumerate().rev() {
            d.extend(std::iter::repeat_n(i + 1, c));
        }
        d
    }

    /// All distributions of `n` vertices over degrees `1..=k`, in
    /// lexicographic order of `v`.
    pub fn all(n: usize, k: usize) -> Vec<DegreeDistribution> {
        fn rec(i: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<DegreeDistribution>) {
            if i + 1 == cur.len() {
                cur[i] = left;
                out.push(DegreeDistribution { v: cur.clone() });
                return;
            }
            for c in 0..=left {
                cur[i] = c;
                rec(i + 1, left - c, cur, out);
            }
        }
        let mut out = Vec::new();
        if k > 0 {
            rec(0, n, &mut vec![0; k], &mut out);
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BaseGenOptions {
    pub cap: usize,
    pub allow_loops: bool,
    pub allow_semi: bool,
}

impl Default for BaseGenOptions {
    fn default() -> Self {
        BaseGenOptions { cap: DEFAULT_CAP, allow_loops: true, allow_semi: true }
    }
}

/// Connected loop-free, semi-edge-free multigraphs with the given degree
/// distribution, pairwise non-isomorphic.
pub fn generate_multigraphs(dist: &DegreeDistribution, cap: usize) -> Result<Vec<Pregraph>, BaseGenError> {
    let n = dist.n();
    if n == 0 {
        return Err(BaseGenError::EmptyDistribution);
    }
    if n > cap {
        return Err(BaseGenError::CapExceeded { n, cap });
    }
    let deg = dist.degrees();
    if deg.iter().sum::<usize>() % 2 == 1 {
        return Ok(Vec::new());
    }
    let mut gen = MultiGen { n, res: deg, edges: Vec::new(), seen: HashSet::new(), out: Vec::new() };
    gen.pair(0, 1);
    Ok(gen.out)
}

struct MultiGen {
    n: usize,
    res: Vec<usize>,
    edges: Vec<(usize, usize)>,
    seen: HashSet<Vec<u8>>,
    out: Vec<Pregraph>,
}

impl MultiGen {
    fn pair(&mut self, u: usize, v: usize) {
        if u + 1 >= self.n {
            if self.res.iter().all(|&r| r == 0) {
                self.emit();
            }
            return;
        }
        if v == self.n {
            if self.res[u] == 0 {
                self.pair(u + 1, u + 2);
            }
            return;
        }
        let rest: usize = self.res[v..].iter().sum();
        if self.res[u] > rest {
            return;
        }
        let max = self.res[u].min(self.res[v]);
        for c in (0..=max).rev() {
            self.res[u] -= c;
            self.res[v] -= c;
            self.edges.extend(std::iter::repeat_n((u, v), c));
            self.pair(u, v + 1);
            self.edges.truncate(self.edges.len() - c);
            self.res[u] += c;
            self.res[v] += c;
        }
    }

    fn emit(&mut self) {
        let edges = self.edges.iter().map(|&(u, v)| Edge::Full(u, v)).collect();
        let g = Pregraph::new(self.n, edges).expect("generated edges are in range");
        if g.is_connected() && self.seen.insert(g.canonical_form()) {
            self.out.push(g);
        }
    }
}

/// Every way to raise each vertex to degree `k` with loops (2 each) and
/// semi-edges (1 each). Isomorphic completions are not merged here.
pub fn complete_with_loops_semiedges(g: &Pregraph, k: usize, opts: &BaseGenOptions) -> Result<Vec<Pregraph>, BaseGenError> {
    let mut choices: Vec<Vec<(usize, usize)>> = Vec::with_capacity(g.n());
    for v in 0..g.n() {
        let d = g.degree(v);
        if d > k {
            return Err(BaseGenError::DegreeTooHigh { vertex: v, degree: d, k });
        }
        let r = k - d;
        let opts_v: Vec<(usize, usize)> = (0..=r / 2)
            .map(|l| (l, r - 2 * l))
            .filter(|&(l, s)| (opts.allow_loops || l == 0) && (opts.allow_semi || s == 0))
            .collect();
        if opts_v.is_empty() {
            return if !opts.allow_semi && r % 2 == 1 { Err(BaseGenError::OddDeficiency { vertex: v }) } else { Ok(Vec::new()) };
        }
        choices.push(opts_v);
    }
    let mut out = Vec::new();
    let mut pick = vec![0usize; g.n()];
    loop {
        let mut edges = g.edges().to_vec();
        for (v, &p) in pick.iter().enumerate() {
            let (l, s) = choices[v][p];
            edges.extend(std::iter::repeat_n(Edge::Full(v, v), l));
            edges.extend(std::iter::repeat_n(Edge::Semi(v), s));
        }
        out.push(Pregraph::new(g.n(), edges).expect("completion edges are in range"));
        // Odometer over per-vertex choices, last vertex fastest.
        let mut i = g.n();
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            pick[i] += 1;
            if pick[i] < choices[i].len() {
                break;
            }
            pick[i] = 0;
        }
    }
}

/// All connected k-regular pregraphs on `n` vertices up to isomorphism.
pub fn generate_base_graphs(k: usize, n: usize, opts: &BaseGenOptions) -> Result<Vec<Pregraph>, BaseGenError> {
    if n > opts.cap {
        return Err(BaseGenError::CapExceeded { n, cap: opts.cap });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let multigraphs = if n == 1 {
        vec![Pregraph::edgeless(1).expect("one vertex")]
    } else {
        let mut all = Vec::new();
        for dist in DegreeDistribution::all(n, k) {
            all.extend(generate_multigraphs(&dist, opts.cap)?);
        }
        all
    };
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for m in &multigraphs {
        let completions = match complete_with_loops_semiedges(m, k, opts) {
            Ok(c) => c,
            Err(BaseGenError::OddDeficiency { .. }) => continue,
            Err(e) => return Err(e),
        };
        for c in completions {
            debug_assert!(c.is_k_regular(k));
            if c.is_connected() && seen.insert(c.canonical_form()) {
                out.push(c);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Multiplicities of full edges, loops and semi-edges.
    fn profile(g: &Pregraph) -> (Vec<usize>, Vec<usize>, Vec<usize>) {
        let n = g.n();
        let (mut full, mut loops, mut semis) = (vec![0; n * n], vec![0; n], vec![0; n]);
        for e in g.edges() {
            match *e {
                Edge::Semi(u) => semis[u] += 1,
                Edge::Full(u, v) if u == v => loops[u] += 1,
                Edge::Full(u, v) => {
                    full[u * n + v] += 1;
                    full[v * n + u] += 1;
                }
            }
        }
        (full, loops, semis)
    }

    fn brute_isomorphic(a: &Pregraph, b: &Pregraph) -> bool {
        if a.n() != b.n() || a.edges().len() != b.edges().len() {
            return false;
        }
        let n = a.n();
        let (fa, la, sa) = profile(a);
        let (fb, lb, sb) = profile(b);
        let mut perm: Vec<usize> = (0..n).collect();
        loop {
            let ok = (0..n).all(|u| {
                la[u] == lb[perm[u]] && sa[u] == sb[perm[u]] && (0..n).all(|v| fa[u * n + v] == fb[perm[u] * n + perm[v]])
            });
            if ok {
                return true;
            }
            if !crate::pregraph::next_permutation(&mut perm) {
                return false;
            }
        }
    }

    fn assert_pairwise_distinct(gs: &[Pregraph]) {
        for i in 0..gs.len() {
            for j in i + 1..gs.len() {
                assert!(!brute_isomorphic(&gs[i], &gs[j]), "{} vs {}", gs[i].to_text(), gs[j].to_text());
            }
        }
    }

    #[test]
    fn two_vertex_multigraphs() {
        for (v, m) in [(vec![2, 0, 0], 1), (vec![0, 2, 0], 2), (vec![0, 0, 2], 3)] {
            let gs = generate_multigraphs(&DegreeDistribution { v }, 12).unwrap();
            assert_eq!(gs.len(), 1);
            assert_eq!(gs[0].edges(), vec![Edge::Full(0, 1); m].as_slice());
        }
        assert!(generate_multigraphs(&DegreeDistribution { v: vec![1, 1, 0] }, 12).unwrap().is_empty());
    }

    #[test]
    fn completions() {
        let opts = BaseGenOptions::default();
        let single = Pregraph::parse("pregraph 2\n0 1\n").unwrap();
        assert_eq!(complete_with_loops_semiedges(&single, 3, &opts).unwrap().len(), 4);
        let triple = Pregraph::parse("pregraph 2\n0 1\n0 1\n0 1\n").unwrap();
        let t = complete_with_loops_semiedges(&triple, 3, &opts).unwrap();
        assert_eq!(t, vec![triple.clone()]);
        let double = Pregraph::parse("pregraph 2\n0 1\n0 1\n").unwrap();
        let d = complete_with_loops_semiedges(&double, 3, &opts).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].edges().iter().filter(|e| e.is_semi()).count(), 2);
        let no_semi = BaseGenOptions { allow_semi: false, ..opts };
        assert_eq!(complete_with_loops_semiedges(&double, 3, &no_semi), Err(BaseGenError::OddDeficiency { vertex: 0 }));
    }

    #[test]
    fn small_counts() {
        let opts = BaseGenOptions::default();
        let two = generate_base_graphs(3, 2, &opts).unwrap();
        assert_eq!(two.len(), 5);
        assert_pairwise_distinct(&two);
        assert_eq!(generate_base_graphs(3, 1, &opts).unwrap().len(), 2);
        assert_eq!(generate_base_graphs(1, 2, &opts).unwrap().len(), 1);
        assert!(matches!(generate_base_graphs(3, 13, &opts), Err(BaseGenError::CapExceeded { n: 13, cap: 12 })));
    }

    #[test]
    fn outputs_are_regular_connected_and_distinct() {
        let opts = BaseGenOptions::default();
        for (k, n) in [(3, 3), (3, 4), (4, 2), (4, 3), (2, 4)] {
            let gs = generate_base_graphs(k, n, &opts).unwrap();
            assert!(!gs.is_empty());
            for g in &gs {
                assert!(g.is_k_regular(k) && g.is_connected());
            }
            assert_pairwise_distinct(&gs);
            assert_eq!(gs, generate_base_graphs(k, n, &opts).unwrap());
        }
    }

    /// Every connected k-regular pregraph found by naive enumeration of edge
    /// multisets is isomorphic to some generated one.
    #[test]
    fn complete_against_naive_enumeration() {
        for (k, n) in [(3, 2), (3, 3), (4, 2), (2, 3)] {
            let gen = generate_base_graphs(k, n, &BaseGenOptions::default()).unwrap();
            let mut kinds: Vec<Edge> = Vec::new();
            for u in 0..n {
                for v in u..n {
                    kinds.push(Edge::Full(u, v));
                }
                kinds.push(Edge::Semi(u));
            }
            let mut found: Vec<Pregraph> = Vec::new();
            let mut counts = vec![0usize; kinds.len()];
            naive(&kinds, 0, &mut counts, n, k, &mut found);
            for g in &found {
                assert!(gen.iter().any(|h| brute_isomorphic(g, h)), "missing {}", g.to_text());
            }
            let classes = found.iter().fold(Vec::<&Pregraph>::new(), |mut acc, g| {
                if !acc.iter().any(|h| brute_isomorphic(g, h)) {
                    acc.push(g);
                }
                acc
            });
            assert_eq!(classes.len(), gen.len());
        }
    }

    fn naive(kinds: &[Edge], i: usize, counts: &mut Vec<usize>, n: usize, k: usize, out: &mut Vec<Pregraph>) {
        let mut deg = vec![0usize; n];
        for (e, &c) in kinds.iter().zip(counts.iter()) {
            match *e {
                Edge::Semi(u) => deg[u] += c,
                Edge::Full(u, v) => {
                    deg[u] += c;
                    deg[v] += c;
                }
            }
        }
        if deg.iter().any(|&d| d > k) {
            return;
        }
        if i == kinds.len() {
            if deg.iter().all(|&d| d == k) {
                let edges = kinds.iter().zip(counts.iter()).flat_map(|(e, &c)| std::iter::repeat_n(*e, c)).collect();
                let g = Pregraph::new(n, edges).unwrap();
                if g.is_connected() {
                    out.push(g);
                }
            }
            return;
        }
        for c in 0..=k {
            counts[i] = c;
            naive(kinds, i + 1, counts, n, k, out);
        }
        counts[i] = 0;
    }
}

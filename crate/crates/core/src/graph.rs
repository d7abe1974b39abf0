//! Simple undirected graphs and the graph6 / sparse6 text encodings.

use std::collections::VecDeque;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("empty encoding")]
    Empty,
    #[error("byte {byte:#04x} at offset {offset} is outside the printable range")]
    BadByte { offset: usize, byte: u8 },
    #[error("encoding truncated: expected {expected} data bytes, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("{0} trailing bytes after graph data")]
    Trailing(usize),
    #[error("vertex count {0} too large")]
    TooLarge(u64),
}

/// Loop-free, multi-edge-free undirected graph with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SimpleGraph {
    adj: Vec<Vec<u32>>,
    edges: usize,
}

impl SimpleGraph {
    pub fn new(n: usize) -> Self {
        SimpleGraph { adj: vec![Vec::new(); n], edges: 0 }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        let mut g = Self::new(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        let n = self.n();
        for x in [u, v] {
            if x >= n {
                return Err(GraphError::VertexOutOfRange { vertex: x, n });
            }
        }
        if u == v {
            return Err(GraphError::Loop(u));
        }
        match self.adj[u].binary_search(&(v as u32)) {
            Ok(_) => Err(GraphError::DuplicateEdge(u.min(v), u.max(v))),
            Err(pos) => {
                self.adj[u].insert(pos, v as u32);
                let pos = self.adj[v].binary_search(&(u as u32)).unwrap_err();
                self.adj[v].insert(pos, u as u32);
                self.edges += 1;
                Ok(())
            }
        }
    }

    /// Removes `{u, v}` if present; returns whether it was.
    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        let Ok(p) = self.adj[u].binary_search(&(v as u32)) else {
            return false;
        };
        self.adj[u].remove(p);
        let q = self.adj[v].binary_search(&(u as u32)).expect("symmetric adjacency");
        self.adj[v].remove(q);
        self.edges -= 1;
        true
    }

    /// Builds directly from adjacency lists that are already symmetric,
    /// sorted and free of loops and duplicates.
    pub(crate) fn from_sorted_adjacency(adj: Vec<Vec<u32>>) -> Self {
        let edges = adj.iter().map(Vec::len).sum::<usize>() / 2;
        SimpleGraph { adj, edges }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&(v as u32)).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nb)| nb.iter().map(move |&v| (u, v as usize)).filter(|&(u, v)| u < v))
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    /// `Some(k)` when every vertex has degree `k`.
    pub fn regular_degree(&self) -> Option<usize> {
        let k = self.adj.first().map_or(0, Vec::len);
        self.adj.iter().all(|a| a.len() == k).then_some(k)
    }

    pub fn min_max_degree(&self) -> (usize, usize) {
        let min = self.adj.iter().map(Vec::len).min().unwrap_or(0);
        let max = self.adj.iter().map(Vec::len).max().unwrap_or(0);
        (min, max)
    }

    pub fn is_connected(&self) -> bool {
        if self.n() == 0 {
            return true;
        }
        self.bfs_distances(0).iter().all(|&d| d != u32::MAX)
    }

    /// Two-colors the graph; `None` if an odd cycle exists.
    pub fn bipartition(&self) -> Option<Vec<u8>> {
        let mut side = vec![u8::MAX; self.n()];
        for s in 0..self.n() {
            if side[s] != u8::MAX {
                continue;
            }
            side[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for &y in &self.adj[x] {
                    let y = y as usize;
                    if side[y] == u8::MAX {
                        side[y] = 1 - side[x];
                        queue.push_back(y);
                    } else if side[y] == side[x] {
                        return None;
                    }
                }
            }
        }
        Some(side)
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// BFS distances from `s`; unreachable vertices get `u32::MAX`.
    pub fn bfs_distances(&self, s: usize) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.n()];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for &y in &self.adj[x] {
                if dist[y as usize] == u32::MAX {
                    dist[y as usize] = dist[x] + 1;
                    queue.push_back(y as usize);
                }
            }
        }
        dist
    }

    /// Graph with vertex `v` renamed to `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> SimpleGraph {
        let mut adj = vec![Vec::new(); self.n()];
        for (u, nb) in self.adj.iter().enumerate() {
            adj[perm[u]] = nb.iter().map(|&v| perm[v as usize] as u32).collect();
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        SimpleGraph { adj, edges: self.edges }
    }

    /// Subgraph induced on vertices with `keep[v]`, renumbered in ascending
    /// order. Also returns the old index of each new vertex.
    pub fn induced(&self, keep: &[bool]) -> (SimpleGraph, Vec<usize>) {
        let old: Vec<usize> = (0..self.n()).filter(|&v| keep[v]).collect();
        let mut new_of = vec![u32::MAX; self.n()];
        for (i, &v) in old.iter().enumerate() {
            new_of[v] = i as u32;
        }
        let adj = old
            .iter()
            .map(|&v| self.adj[v].iter().map(|&w| new_of[w as usize]).filter(|&w| w != u32::MAX).collect())
            .collect();
        (SimpleGraph::from_sorted_adjacency(adj), old)
    }

    /// True when every edge of `self` is an edge of `other` (same vertex set).
    pub fn is_subgraph_of(&self, other: &SimpleGraph) -> bool {
        self.n() == other.n() && self.edges().all(|(u, v)| other.has_edge(u, v))
    }

    pub fn cycle(n: usize) -> SimpleGraph {
        Self::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("n >= 3")
    }

    pub fn complete(n: usize) -> SimpleGraph {
        Self::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).expect("simple")
    }

    pub fn petersen() -> SimpleGraph {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        Self::from_edges(10, outer.chain(spokes).chain(inner)).expect("simple")
    }

    /// Incidence graph of the Fano plane: 14 vertices, cubic, girth 6.
    pub fn heawood() -> SimpleGraph {
        let lines = (0..7).flat_map(|i| [0usize, 1, 3].map(|d| (i, 7 + (i + d) % 7)));
        Self::from_edges(14, lines).expect("simple")
    }

    // ---- graph6 / sparse6 ----

    pub fn to_graph6(&self) -> String {
        let n = self.n();
        let mut out = encode_n(n as u64);
        let mut bits = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for j in 1..n {
            for i in 0..j {
                bits.push(self.has_edge(i, j));
            }
        }
        push_bits(&mut out, &bits);
        String::from_utf8(out).expect("ascii")
    }

    pub fn from_graph6(text: &str) -> Result<SimpleGraph, GraphError> {
        let text = text.trim_end_matches(['\n', '\r']);
        let text = text.strip_prefix(">>graph6<<").unwrap_or(text);
        let bytes = text.as_bytes();
        let (n, mut pos) = decode_n(bytes)?;
        check_printable(bytes)?;
        let pairs = n * n.saturating_sub(1) / 2;
        let need = pairs.div_ceil(6);
        let have = bytes.len() - pos;
        if have < need {
            return Err(GraphError::Truncated { expected: need, found: have });
        }
        if have > need {
            return Err(GraphError::Trailing(have - need));
        }
        let mut adj = vec![Vec::new(); n];
        let (mut i, mut j) = (0usize, 1usize);
        let mut seen = 0;
        'outer: while seen < pairs {
            let chunk = bytes[pos] - 63;
            pos += 1;
            for b in (0..6).rev() {
                if seen == pairs {
                    break 'outer;
                }
                if chunk >> b & 1 == 1 {
                    adj[i].push(j as u32);
                    adj[j].push(i as u32);
                }
                seen += 1;
                i += 1;
                if i == j {
                    i = 0;
                    j += 1;
                }
            }
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Ok(SimpleGraph::from_sorted_adjacency(adj))
    }

    pub fn to_sparse6(&self) -> String {
        let n = self.n();
        let k = sparse6_width(n);
        let mut bits: Vec<bool> = Vec::new();
        let enc = |bits: &mut Vec<bool>, x: usize| {
            for i in (0..k).rev() {
                bits.push(x >> i & 1 == 1);
            }
        };
        let mut edges: Vec<(usize, usize)> = self.edges().map(|(u, v)| (v, u)).collect();
        edges.sort_unstable();
        let mut cur = 0;
        for (v, u) in edges {
            if v == cur {
                bits.push(false);
                enc(&mut bits, u);
            } else if v == cur + 1 {
                cur += 1;
                bits.push(true);
                enc(&mut bits, u);
            } else {
                cur = v;
                bits.push(true);
                enc(&mut bits, v);
                bits.push(false);
                enc(&mut bits, u);
            }
        }
        let pad = (6 - bits.len() % 6) % 6;
        // Padding with ones could otherwise decode as an edge to n-1.
        if k < 6 && n == 1 << k && pad >= k && cur + 1 < n {
            bits.push(false);
        }
        let pad = (6 - bits.len() % 6) % 6;
        bits.extend(std::iter::repeat_n(true, pad));
        let mut out = vec![b':'];
        out.extend(encode_n(n as u64));
        push_bits(&mut out, &bits);
        String::from_utf8(out).expect("ascii")
    }

    pub fn from_sparse6(text: &str) -> Result<SimpleGraph, GraphError> {
        let text = text.trim_end_matches(['\n', '\r']);
        let text = text.strip_prefix(">>sparse6<<").unwrap_or(text);
        let body = text.strip_prefix(':').ok_or(GraphError::BadByte { offset: 0, byte: *text.as_bytes().first().ok_or(GraphError::Empty)? })?;
        let bytes = body.as_bytes();
        let (n, pos) = decode_n(bytes)?;
        check_printable(bytes)?;
        let k = sparse6_width(n);
        let data = &bytes[pos..];
        let total = data.len() * 6;
        let bit = |i: usize| (data[i / 6] - 63) >> (5 - i % 6) & 1 == 1;
        let mut g = SimpleGraph::new(n);
        let (mut i, mut v) = (0usize, 0usize);
        while i + 1 + k <= total {
            let b = bit(i);
            let mut x = 0usize;
            for j in 0..k {
                x = x << 1 | bit(i + 1 + j) as usize;
            }
            i += 1 + k;
            if b {
                v += 1;
            }
            if x >= n || v >= n {
                break;
            }
            if x > v {
                v = x;
            } else {
                g.add_edge(x, v)?;
            }
        }
        Ok(g)
    }

    /// Decodes one line in either encoding (sparse6 lines start with `:`).
    pub fn from_g6_line(line: &str) -> Result<SimpleGraph, GraphError> {
        let line = line.trim();
        if line.starts_with(':') || line.starts_with(">>sparse6<<") {
            Self::from_sparse6(line)
        } else {
            Self::from_graph6(line)
        }
    }
}

/// Decodes every non-empty, non-comment line of a graph6/sparse6 file.
pub fn parse_graph_file(text: &str) -> Result<Vec<SimpleGraph>, (usize, GraphError)> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|(i, l)| SimpleGraph::from_g6_line(l).map_err(|e| (i + 1, e)))
        .collect()
}

fn sparse6_width(n: usize) -> usize {
    let mut k = 1;
    while (1usize << k) < n {
        k += 1;
    }
    k
}

fn encode_n(n: u64) -> Vec<u8> {
    if n <= 62 {
        vec![n as u8 + 63]
    } else if n <= 258_047 {
        let mut v = vec![126];
        v.extend((0..3).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + 63));
        v
    } else {
        let mut v = vec![126, 126];
        v.extend((0..6).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + 63));
        v
    }
}

/// Largest vertex count accepted by the decoders; keeps hostile headers from
/// allocating gigabytes.
const MAX_DECODED_N: u64 = 1 << 22;

fn decode_n(bytes: &[u8]) -> Result<(usize, usize), GraphError> {
    let get = |i: usize| -> Result<u64, GraphError> {
        let b = *bytes.get(i).ok_or(GraphError::Truncated { expected: i + 1, found: bytes.len() })?;
        if !(63..=126).contains(&b) {
            return Err(GraphError::BadByte { offset: i, byte: b });
        }
        Ok((b - 63) as u64)
    };
    if bytes.is_empty() {
        return Err(GraphError::Empty);
    }
    let (n, pos) = if get(0)? != 63 {
        (get(0)?, 1)
    } else if bytes.get(1) != Some(&126) {
        ((0..3).try_fold(0u64, |acc, i| Ok::<_, GraphError>(acc << 6 | get(1 + i)?))?, 4)
    } else {
        ((0..6).try_fold(0u64, |acc, i| Ok::<_, GraphError>(acc << 6 | get(2 + i)?))?, 8)
    };
    if n > MAX_DECODED_N {
        return Err(GraphError::TooLarge(n));
    }
    Ok((n as usize, pos))
}

fn check_printable(bytes: &[u8]) -> Result<(), GraphError> {
    match bytes.iter().position(|b| !(63..=126).contains(b)) {
        Some(offset) => Err(GraphError::BadByte { offset, byte: bytes[offset] }),
        None => Ok(()),
    }
}

fn push_bits(out: &mut Vec<u8>, bits: &[bool]) {
    for chunk in bits.chunks(6) {
        let mut x = 0u8;
        for i in 0..6 {
            x = x << 1 | chunk.get(i).copied().unwrap_or(false) as u8;
        }
        out.push(x + 63);
    }
}


#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    fn arb_graph() -> impl Strategy<Value = SimpleGraph> {
        (0usize..40).prop_flat_map(|n| {
            let pairs = n * n.saturating_sub(1) / 2;
            proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
                let mut g = SimpleGraph::new(n);
                let mut it = bits.into_iter();
                for v in 1..n {
                    for u in 0..v {
                        if it.next().unwrap() {
                            g.add_edge(u, v).unwrap();
                        }
                    }
                }
                g
            })
        })
    }

    proptest! {
        #[test]
        fn graph6_round_trip(g in arb_graph()) {
            prop_assert_eq!(SimpleGraph::from_graph6(&g.to_graph6()).unwrap(), g);
        }

        #[test]
        fn sparse6_round_trip(g in arb_graph()) {
            prop_assert_eq!(SimpleGraph::from_sparse6(&g.to_sparse6()).unwrap(), g);
        }

        #[test]
        fn decoders_never_panic(s in "\\PC{0,40}") {
            let _ = SimpleGraph::from_graph6(&s);
            let _ = SimpleGraph::from_sparse6(&s);
        }
    }
}

//! Canonical forms by individualization and refinement.
//!
//! Each connected component is labeled separately: colors give the initial
//! ordered partition, equitable refinement splits cells by neighbor counts,
//! and the search individualizes vertices of the first non-singleton cell.
//! The certificate of a leaf is its relabeled edge list; the form is the
//! smallest certificate. Automorphisms found by matching leaves drive orbit
//! pruning and jumps back to the common ancestor of the matching leaves.

use std::collections::hash_map::DefaultHasher;
use std::collections::{HashMap, VecDeque};
use std::hash::{Hash, Hasher};

use crate::graph::SimpleGraph;

/// Upper bound on the leaves remembered for automorphism detection.
const LEAF_MEMORY: usize = 4096;

/// Byte encoding that is equal for two colored graphs iff they are
/// isomorphic by a color-preserving bijection.
pub fn canonical_form(g: &SimpleGraph, colors: Option<&[u32]>) -> Vec<u8> {
    let n = g.n();
    let zeros;
    let colors = match colors {
        Some(c) => c,
        None => {
            zeros = vec![0u32; n];
            &zeros
        }
    };
    assert_eq!(colors.len(), n, "one color per vertex");
    let mut parts: Vec<Vec<u8>> = components(g)
        .into_iter()
        .map(|comp| {
            let keep: Vec<bool> = {
                let mut k = vec![false; n];
                for &v in &comp {
                    k[v] = true;
                }
                k
            };
            let (sub, old) = g.induced(&keep);
            let sub_colors: Vec<u32> = old.iter().map(|&v| colors[v]).collect();
            Canon::new(&sub, &sub_colors).certificate()
        })
        .collect();
    parts.sort();
    let mut out = Vec::new();
    put(&mut out, n as u32);
    put(&mut out, parts.len() as u32);
    for p in parts {
        out.extend(p);
    }
    out
}

/// Positions `0..n` assigned to vertices by the canonical labeling of a
/// connected colored graph: `label[v]` is the new name of `v`.
pub fn canonical_labeling(g: &SimpleGraph, colors: &[u32]) -> Vec<usize> {
    let mut c = Canon::new(g, colors);
    c.run();
    let best = c.best.expect("at least one leaf");
    let mut label = vec![0; g.n()];
    for (i, &v) in best.lab.iter().enumerate() {
        label[v as usize] = i;
    }
    label
}

fn put(out: &mut Vec<u8>, x: u32) {
    out.extend_from_slice(&x.to_le_bytes());
}

fn components(g: &SimpleGraph) -> Vec<Vec<usize>> {
    let mut seen = vec![false; g.n()];
    let mut comps = Vec::new();
    for s in 0..g.n() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut i = 0;
        while i < comp.len() {
            for &w in g.neighbors(comp[i]) {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    comp.push(w as usize);
                }
            }
            i += 1;
        }
        comps.push(comp);
    }
    comps
}

#[derive(Clone)]
struct Partition {
    lab: Vec<u32>,
    pos: Vec<u32>,
    /// Start of the cell containing each vertex.
    cell: Vec<u32>,
    /// Exclusive end of the cell, indexed by cell start.
    end: Vec<u32>,
    cells: usize,
}

impl Partition {
    fn is_discrete(&self) -> bool {
        self.cells == self.lab.len()
    }

    fn first_nontrivial_cell(&self) -> Option<usize> {
        let mut s = 0;
        while s < self.lab.len() {
            let e = self.end[s] as usize;
            if e - s > 1 {
                return Some(s);
            }
            s = e;
        }
        None
    }
}

struct Leaf {
    lab: Vec<u32>,
    cert: Vec<(u32, u32)>,
    path: Vec<u32>,
}

struct Canon<'a> {
    g: &'a SimpleGraph,
    colors: &'a [u32],
    best: Option<Leaf>,
    seen: HashMap<u64, (Vec<u32>, Vec<u32>)>,
    autos: Vec<Vec<u32>>,
    count: Vec<u32>,
    path: Vec<u32>,
}

impl<'a> Canon<'a> {
    fn new(g: &'a SimpleGraph, colors: &'a [u32]) -> Self {
        Canon {
            g,
            colors,
            best: None,
            seen: HashMap::new(),
            autos: Vec::new(),
            count: vec![0; g.n()],
            path: Vec::new(),
        }
    }

    fn certificate(mut self) -> Vec<u8> {
        self.run();
        let best = self.best.expect("at least one leaf");
        let mut out = Vec::with_capacity(12 + 4 * self.g.n() + 8 * best.cert.len());
        put(&mut out, self.g.n() as u32);
        for &v in &best.lab {
            put(&mut out, self.colors[v as usize]);
        }
        put(&mut out, best.cert.len() as u32);
        for &(a, b) in &best.cert {
            put(&mut out, a);
            put(&mut out, b);
        }
        out
    }

    fn run(&mut self) {
        let n = self.g.n();
        let mut lab: Vec<u32> = (0..n as u32).collect();
        lab.sort_by_key(|&v| (self.colors[v as usize], v));
        let mut p = Partition { lab, pos: vec![0; n], cell: vec![0; n], end: vec![0; n], cells: 0 };
        let mut starts = Vec::new();
        let mut s = 0;
        while s < n {
            let c = self.colors[p.lab[s] as usize];
            let mut e = s;
            while e < n && self.colors[p.lab[e] as usize] == c {
                e += 1;
            }
            for i in s..e {
                let v = p.lab[i] as usize;
                p.pos[v] = i as u32;
                p.cell[v] = s as u32;
            }
            p.end[s] = e as u32;
            p.cells += 1;
            starts.push(s as u32);
            s = e;
        }
        self.refine(&mut p, starts);
        self.search(p);
    }

    /// Returns the depth to unwind to, if a jump was triggered below.
    fn search(&mut self, p: Partition) -> Option<usize> {
        let depth = self.path.len();
        let Some(target) = p.first_nontrivial_cell() else {
            return self.leaf(&p);
        };
        let mut children: Vec<u32> = p.lab[target..p.end[target] as usize].to_vec();
        children.sort_unstable();
        let mut explored: Vec<u32> = Vec::new();
        let mut orbits: Option<(usize, Vec<u32>)> = None;
        for &v in &children {
            if !explored.is_empty() {
                // Recompute orbits only when new automorphisms arrived.
                if orbits.as_ref().is_none_or(|(k, _)| *k != self.autos.len()) {
                    orbits = Some((self.autos.len(), self.stabilizer_orbits()));
                }
                let orb = &orbits.as_ref().expect("set above").1;
                if explored.iter().any(|&w| find(orb, w) == find(orb, v)) {
                    continue;
                }
            }
            let mut q = p.clone();
            let start = individualize(&mut q, v);
            self.refine(&mut q, vec![start]);
            self.path.push(v);
            let jump = self.search(q);
            self.path.pop();
            explored.push(v);
            if let Some(j) = jump {
                if j < depth {
                    return Some(j);
                }
            }
        }
        None
    }

    fn leaf(&mut self, p: &Partition) -> Option<usize> {
        let mut cert: Vec<(u32, u32)> = self
            .g
            .edges()
            .map(|(u, v)| {
                let (a, b) = (p.pos[u], p.pos[v]);
                (a.min(b), a.max(b))
            })
            .collect();
        cert.sort_unstable();
        let mut h = DefaultHasher::new();
        cert.hash(&mut h);
        let key = h.finish();

        let mut jump = None;
        if let Some((lab, path)) = self.seen.get(&key) {
            let gamma = map_between(&p.lab, lab);
            if self.is_automorphism(&gamma) {
                jump = Some(common_prefix(&self.path, path));
                self.autos.push(gamma);
            }
        } else if self.seen.len() < LEAF_MEMORY {
            self.seen.insert(key, (p.lab.clone(), self.path.clone()));
        }
        match &self.best {
            None => self.best = Some(Leaf { lab: p.lab.clone(), cert, path: self.path.clone() }),
            Some(b) if cert < b.cert => self.best = Some(Leaf { lab: p.lab.clone(), cert, path: self.path.clone() }),
            Some(b) if jump.is_none() && cert == b.cert => {
                let gamma = map_between(&p.lab, &b.lab);
                if self.is_automorphism(&gamma) {
                    jump = Some(common_prefix(&self.path, &b.path));
                    self.autos.push(gamma);
                }
            }
            _ => {}
        }
        jump
    }

    fn is_automorphism(&self, gamma: &[u32]) -> bool {
        let g = self.g;
        (0..g.n()).all(|v| self.colors[v] == self.colors[gamma[v] as usize])
            && g.edges().all(|(u, v)| g.has_edge(gamma[u] as usize, gamma[v] as usize))
    }

    /// Orbits of the group generated by stored automorphisms fixing the
    /// current path pointwise, as a union-find parent array.
    fn stabilizer_orbits(&self) -> Vec<u32> {
        let mut parent: Vec<u32> = (0..self.g.n() as u32).collect();
        for a in &self.autos {
            if self.path.iter().all(|&v| a[v as usize] == v) {
                for (v, &w) in a.iter().enumerate() {
                    union(&mut parent, v as u32, w);
                }
            }
        }
        parent
    }

    /// Equitable refinement. `queue` holds cell starts to use as splitters.
    fn refine(&mut self, p: &mut Partition, queue: Vec<u32>) {
        let n = self.g.n();
        let mut in_queue = vec![false; n];
        let mut queue: VecDeque<u32> = queue.into();
        for &s in &queue {
            in_queue[s as usize] = true;
        }
        let mut touched: Vec<u32> = Vec::new();
        let mut cells: Vec<u32> = Vec::new();
        let mut cell_mark = vec![false; n];
        while let Some(s) = queue.pop_front() {
            if p.is_discrete() {
                break;
            }
            let s = s as usize;
            in_queue[s] = false;
            let e = p.end[s] as usize;
            for i in s..e {
                for &w in self.g.neighbors(p.lab[i] as usize) {
                    if self.count[w as usize] == 0 {
                        touched.push(w);
                    }
                    self.count[w as usize] += 1;
                }
            }
            for &w in &touched {
                let c = p.cell[w as usize];
                if !cell_mark[c as usize] {
                    cell_mark[c as usize] = true;
                    cells.push(c);
                }
            }
            cells.sort_unstable();
            for &cs in &cells {
                cell_mark[cs as usize] = false;
                let (cs, ce) = (cs as usize, p.end[cs as usize] as usize);
                if ce - cs == 1 {
                    continue;
                }
                let count = &self.count;
                p.lab[cs..ce].sort_unstable_by_key(|&v| count[v as usize]);
                if count[p.lab[cs] as usize] == count[p.lab[ce - 1] as usize] {
                    continue;
                }
                // Split into runs of equal count.
                let mut frags = Vec::new();
                let mut a = cs;
                while a < ce {
                    let k = count[p.lab[a] as usize];
                    let mut b = a;
                    while b < ce && count[p.lab[b] as usize] == k {
                        b += 1;
                    }
                    frags.push((a, b));
                    a = b;
                }
                for &(a, b) in &frags {
                    p.end[a] = b as u32;
                    for i in a..b {
                        let v = p.lab[i] as usize;
                        p.pos[v] = i as u32;
                        p.cell[v] = a as u32;
                    }
                }
                p.cells += frags.len() - 1;
                let skip = if in_queue[cs] {
                    None
                } else {
                    // The first largest fragment need not be a splitter.
                    let mut big = 0;
                    for (i, &(a, b)) in frags.iter().enumerate() {
                        if b - a > frags[big].1 - frags[big].0 {
                            big = i;
                        }
                    }
                    Some(big)
                };
                for (i, &(a, _)) in frags.iter().enumerate() {
                    if Some(i) != skip && !in_queue[a] {
                        in_queue[a] = true;
                        queue.push_back(a as u32);
                    }
                }
            }
            for &w in &touched {
                self.count[w as usize] = 0;
            }
            touched.clear();
            cells.clear();
        }
    }
}

/// Moves `v` to the front of its cell as a singleton; returns its position.
fn individualize(p: &mut Partition, v: u32) -> u32 {
    let s = p.cell[v as usize] as usize;
    let i = p.pos[v as usize] as usize;
    let w = p.lab[s];
    p.lab.swap(s, i);
    p.pos[w as usize] = i as u32;
    p.pos[v as usize] = s as u32;
    let e = p.end[s];
    p.end[s] = s as u32 + 1;
    p.end[s + 1] = e;
    for j in s + 1..e as usize {
        p.cell[p.lab[j] as usize] = s as u32 + 1;
    }
    p.cells += 1;
    s as u32
}

/// The vertex map sending `from[i]` to `to[i]`.
fn map_between(from: &[u32], to: &[u32]) -> Vec<u32> {
    let mut gamma = vec![0; from.len()];
    for (&a, &b) in from.iter().zip(to) {
        gamma[a as usize] = b;
    }
    gamma
}

fn common_prefix(a: &[u32], b: &[u32]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

fn find(parent: &[u32], mut x: u32) -> u32 {
    while parent[x as usize] != x {
        x = parent[x as usize];
    }
    x
}

fn union(parent: &mut [u32], a: u32, b: u32) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra != rb {
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        parent[hi as usize] = lo;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Brute-force isomorphism test over all bijections (tiny graphs only).
    fn brute_isomorphic(a: &SimpleGraph, ca: &[u32], b: &SimpleGraph, cb: &[u32]) -> bool {
        fn rec(a: &SimpleGraph, ca: &[u32], b: &SimpleGraph, cb: &[u32], map: &mut Vec<usize>, used: &mut [bool]) -> bool {
            let u = map.len();
            if u == a.n() {
                return true;
            }
            for c in 0..b.n() {
                if used[c] || ca[u] != cb[c] || a.degree(u) != b.degree(c) {
                    continue;
                }
                if (0..u).any(|w| a.has_edge(u, w) != b.has_edge(c, map[w])) {
                    continue;
                }
                used[c] = true;
                map.push(c);
                if rec(a, ca, b, cb, map, used) {
                    return true;
                }
                map.pop();
                used[c] = false;
            }
            false
        }
        a.n() == b.n() && a.edge_count() == b.edge_count() && rec(a, ca, b, cb, &mut Vec::new(), &mut vec![false; b.n()])
    }

    fn random_perm(n: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
        let mut p: Vec<usize> = (0..n).collect();
        p.shuffle(rng);
        p
    }

    #[test]
    fn permutation_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for g in [SimpleGraph::petersen(), SimpleGraph::heawood(), SimpleGraph::cycle(9), SimpleGraph::complete(6)] {
            let f = canonical_form(&g, None);
            for _ in 0..100 {
                let h = g.permuted(&random_perm(g.n(), &mut rng));
                assert_eq!(canonical_form(&h, None), f);
            }
        }
    }

    #[test]
    fn distinguishes_petersen_from_girth_four_cubic() {
        // Prism over C5: cubic, 10 vertices, girth 4.
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 1) % 5));
        let prism = SimpleGraph::from_edges(10, outer.chain(inner).chain((0..5).map(|i| (i, i + 5)))).unwrap();
        assert_ne!(canonical_form(&prism, None), canonical_form(&SimpleGraph::petersen(), None));
    }

    #[test]
    fn colors_matter() {
        let g = SimpleGraph::cycle(4);
        let a = canonical_form(&g, Some(&[1, 0, 0, 0]));
        let b = canonical_form(&g, Some(&[0, 0, 1, 0]));
        let c = canonical_form(&g, Some(&[1, 1, 0, 0]));
        let d = canonical_form(&g, Some(&[1, 0, 1, 0]));
        assert_eq!(a, b);
        assert_ne!(c, d);
    }

    #[test]
    fn disconnected_graphs() {
        let two_c3 = SimpleGraph::from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        let c6 = SimpleGraph::cycle(6);
        assert_ne!(canonical_form(&two_c3, None), canonical_form(&c6, None));
        let shuffled = two_c3.permuted(&[3, 0, 4, 1, 5, 2]);
        assert_eq!(canonical_form(&shuffled, None), canonical_form(&two_c3, None));
        assert_eq!(canonical_form(&SimpleGraph::new(0), None), canonical_form(&SimpleGraph::new(0), None));
    }

    #[test]
    fn labeling_is_an_isomorphism_to_the_form() {
        let g = SimpleGraph::heawood();
        let label = canonical_labeling(&g, &[0; 14]);
        let relabeled = g.permuted(&label);
        let h = g.permuted(&random_perm(14, &mut ChaCha8Rng::seed_from_u64(3)));
        let hl = canonical_labeling(&h, &[0; 14]);
        assert_eq!(h.permuted(&hl), relabeled);
    }

    #[test]
    fn agrees_with_brute_force_on_small_random_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        use rand::Rng;
        let mut graphs = Vec::new();
        for _ in 0..60 {
            let n = rng.gen_range(1..8);
            let mut g = SimpleGraph::new(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.4) {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            let colors: Vec<u32> = (0..n).map(|_| rng.gen_range(0..2)).collect();
            graphs.push((g, colors));
        }
        for (a, ca) in &graphs {
            for (b, cb) in &graphs {
                let same = canonical_form(a, Some(ca)) == canonical_form(b, Some(cb));
                assert_eq!(same, brute_isomorphic(a, ca, b, cb));
            }
        }
    }
}

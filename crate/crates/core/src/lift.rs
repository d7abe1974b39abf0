//! Lifts of voltage assignments, girth through base walks, and the
//! structure- and assignment-based exclusion rules used by the searches.

use std::time::Duration;

use crate::graph::SimpleGraph;
use crate::group::{FiniteGroup, GroupAutomorphism};
use crate::pregraph::{Edge, Pregraph, PregraphError, SpanningTree};
use crate::voltage::VoltageAssignment;

/// Why a total assignment does not produce a simple lift.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum LiftReject {
    #[error("dart {dart} has no voltage")]
    Unassigned { dart: usize },
    #[error("dart {dart} lifts to loops")]
    Loop { dart: usize },
    #[error("parallel edges at base vertex {vertex}")]
    ParallelEdge { vertex: usize },
    #[error("semi-edge dart {dart} carries a non-involution")]
    SemiNotInvolution { dart: usize },
}

/// Lift vertex `u^s` has index `u * |group| + s`.
#[inline]
pub fn lift_vertex(group: &FiniteGroup, u: usize, s: usize) -> usize {
    u * group.order() + s
}

/// Builds the lift: `u^s ~ v^{s * alpha(d)}` for every dart `d = (u, v)`.
pub fn lift(g: &Pregraph, group: &FiniteGroup, alpha: &VoltageAssignment) -> Result<SimpleGraph, LiftReject> {
    let m = group.order();
    let mut adj: Vec<Vec<u32>> = vec![Vec::with_capacity(g.degree(0)); g.n() * m];
    for (e, edge) in g.edges().iter().enumerate() {
        let d = g.edge_dart(e);
        let a = alpha.get(d).ok_or(LiftReject::Unassigned { dart: d })?;
        match *edge {
            Edge::Semi(u) => {
                if group.mul(a, a) != 0 {
                    return Err(LiftReject::SemiNotInvolution { dart: d });
                }
                if a == 0 {
                    return Err(LiftReject::Loop { dart: d });
                }
                for s in 0..m {
                    let t = group.mul(s, a);
                    if s < t {
                        let (x, y) = (lift_vertex(group, u, s), lift_vertex(group, u, t));
                        adj[x].push(y as u32);
                        adj[y].push(x as u32);
                    }
                }
            }
            Edge::Full(u, v) => {
                if u == v && a == 0 {
                    return Err(LiftReject::Loop { dart: d });
                }
                for s in 0..m {
                    let (x, y) = (lift_vertex(group, u, s), lift_vertex(group, v, group.mul(s, a)));
                    adj[x].push(y as u32);
                    adj[y].push(x as u32);
                }
            }
        }
    }
    for (x, list) in adj.iter_mut().enumerate() {
        list.sort_unstable();
        if list.windows(2).any(|w| w[0] == w[1]) {
            return Err(LiftReject::ParallelEdge { vertex: x });
        }
    }
    Ok(SimpleGraph::from_sorted_adjacency(adj))
}

/// Length of the shortest closed non-reversing walk with identity net
/// voltage, if it is at most `cap`. Unassigned darts are not used.
pub fn lift_girth_via_base(g: &Pregraph, group: &FiniteGroup, alpha: &VoltageAssignment, cap: usize) -> Option<usize> {
    let m = group.order();
    let darts = g.darts();
    let mut seen = vec![false; darts.len() * m];
    let mut touched: Vec<usize> = Vec::new();
    let mut best = cap + 1;
    for u in 0..g.n() {
        // States are (last dart, net voltage); the vertex is the dart's head.
        let mut frontier: Vec<(usize, usize)> = Vec::new();
        for &d in g.out_darts(u) {
            let Some(a) = alpha.get(d) else { continue };
            if darts[d].head == u && a == 0 {
                return Some(1);
            }
            if !seen[d * m + a] {
                seen[d * m + a] = true;
                touched.push(d * m + a);
                frontier.push((d, a));
            }
        }
        let mut len = 1;
        'grow: while !frontier.is_empty() && len + 1 < best {
            len += 1;
            let mut next = Vec::new();
            for &(d, net) in &frontier {
                let x = darts[d].head;
                for &d2 in g.out_darts(x) {
                    if d2 == darts[d].inverse {
                        continue;
                    }
                    let Some(a) = alpha.get(d2) else { continue };
                    let net2 = group.mul(net, a);
                    if darts[d2].head == u && net2 == 0 {
                        best = len;
                        break 'grow;
                    }
                    let key = d2 * m + net2;
                    if !seen[key] {
                        seen[key] = true;
                        touched.push(key);
                        next.push((d2, net2));
                    }
                }
            }
            frontier = next;
        }
        for &k in &touched {
            seen[k] = false;
        }
        touched.clear();
    }
    (best <= cap).then_some(best)
}

/// Whether a closed non-reversing walk shorter than `g_min`, starting with
/// `d^{-1}` and using only assigned darts, has identity net voltage. Any such
/// walk through `d` is found this way up to rotation and reversal.
pub fn cannot_achieve_girth(g: &Pregraph, group: &FiniteGroup, d: usize, g_min: usize, alpha: &VoltageAssignment) -> bool {
    let Some(a) = alpha.get(d) else { return false };
    let dart = *g.dart(d);
    let inv = dart.inverse;
    // The single-dart walk (a loop or semi-edge with identity voltage).
    if g_min > 1 && dart.tail == dart.head && a == 0 {
        return true;
    }
    let start = g.dart(inv);
    exists_cnr_walk(g, group, alpha, group.inv(a), inv, start.head, start.tail, 1, g_min.saturating_sub(1))
}

#[allow(clippy::too_many_arguments)]
fn exists_cnr_walk(
    g: &Pregraph,
    group: &FiniteGroup,
    alpha: &VoltageAssignment,
    net: usize,
    prev: usize,
    cur: usize,
    target: usize,
    len: usize,
    max_len: usize,
) -> bool {
    if len >= max_len {
        return false;
    }
    let back = g.dart(prev).inverse;
    for &d in g.out_darts(cur) {
        if d == back {
            continue;
        }
        let Some(a) = alpha.get(d) else { continue };
        let net2 = group.mul(net, a);
        let w = g.dart(d).head;
        if w == target && net2 == 0 {
            return true;
        }
        if exists_cnr_walk(g, group, alpha, net2, d, w, target, len + 1, max_len) {
            return true;
        }
    }
    false
}

/// Outcome of the structure-based exclusions.
#[derive(Debug, Clone)]
pub enum Structural {
    Admissible(Structure),
    Reject(StructuralReject),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StructuralReject {
    TooManySemiEdges { vertex: usize, semi_edges: usize, involutions: usize },
    NoAdmissibleVoltage { dart: usize },
}

/// Spanning tree, useful darts with their admissible voltages, and the
/// assignment with identity on tree darts.
#[derive(Debug, Clone)]
pub struct Structure {
    pub tree: SpanningTree,
    pub useful: Vec<usize>,
    /// `admissible[i]` lists the voltages allowed on `useful[i]`, ascending.
    pub admissible: Vec<Vec<usize>>,
    pub base: VoltageAssignment,
}

pub fn structural_checks(g: &Pregraph, group: &FiniteGroup, g_min: usize) -> Result<Structural, PregraphError> {
    let tree = g.spanning_tree()?;
    let involutions = group.involutions();
    let mut semis = vec![0usize; g.n()];
    for e in g.edges() {
        if let Edge::Semi(u) = *e {
            semis[u] += 1;
        }
    }
    if let Some(v) = (0..g.n()).find(|&v| semis[v] > involutions.len()) {
        return Ok(Structural::Reject(StructuralReject::TooManySemiEdges {
            vertex: v,
            semi_edges: semis[v],
            involutions: involutions.len(),
        }));
    }
    let useful = g.useful_darts(&tree);
    let mut admissible = Vec::with_capacity(useful.len());
    for &d in &useful {
        let dart = g.dart(d);
        let set: Vec<usize> = if dart.semi {
            involutions.clone()
        } else {
            // A walk around the fundamental cycle of d has length q + 1; its
            // power of order Ord(a) closes with identity net voltage.
            let q = if dart.tail == dart.head { 0 } else { tree.path_length(g, dart.tail, dart.head) };
            (0..group.order()).filter(|&a| (q + 1) * group.elem_order(a) >= g_min).collect()
        };
        if set.is_empty() {
            return Ok(Structural::Reject(StructuralReject::NoAdmissibleVoltage { dart: d }));
        }
        admissible.push(set);
    }
    let mut base = VoltageAssignment::unassigned(g);
    for &e in &tree.edges {
        base.set(g, group, g.edge_dart(e), 0);
    }
    Ok(Structural::Admissible(Structure { tree, useful, admissible, base }))
}

/// Which symmetries the canonicity test may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CanonOptions {
    pub enabled: bool,
    pub edge_autos: bool,
    pub group_autos: bool,
    pub max_edge_autos: usize,
    pub max_group_autos: usize,
    pub edge_auto_budget: Duration,
}

impl Default for CanonOptions {
    fn default() -> Self {
        CanonOptions {
            enabled: true,
            edge_autos: true,
            group_autos: true,
            max_edge_autos: 200,
            max_group_autos: 2000,
            edge_auto_budget: Duration::from_secs(2),
        }
    }
}

/// Image of a useful dart under an edge automorphism: the useful position it
/// lands on, and whether it lands on that dart's inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Slot {
    pos: u32,
    inverted: bool,
}

/// Precomputed symmetries for [`not_canonical`].
#[derive(Debug, Clone)]
pub struct CanonContext {
    maps: Vec<Vec<Slot>>,
    group_autos: Vec<GroupAutomorphism>,
    pub edge_autos_complete: bool,
    pub group_autos_complete: bool,
}

impl CanonContext {
    pub fn new(g: &Pregraph, group: &FiniteGroup, s: &Structure, opts: &CanonOptions) -> Self {
        let identity_group = GroupAutomorphism { perm: (0..group.order() as u32).collect() };
        if !opts.enabled {
            return CanonContext { maps: Vec::new(), group_autos: Vec::new(), edge_autos_complete: true, group_autos_complete: true };
        }
        let mut pos_of = vec![u32::MAX; g.darts().len()];
        for (i, &d) in s.useful.iter().enumerate() {
            pos_of[d] = i as u32;
        }
        let to_slots = |dart_perm: &[usize]| -> Vec<Slot> {
            s.useful
                .iter()
                .map(|&d| {
                    let e = dart_perm[d];
                    if pos_of[e] != u32::MAX {
                        Slot { pos: pos_of[e], inverted: false }
                    } else {
                        Slot { pos: pos_of[g.dart(e).inverse], inverted: true }
                    }
                })
                .collect()
        };
        let identity_map: Vec<Slot> = (0..s.useful.len()).map(|i| Slot { pos: i as u32, inverted: false }).collect();
        let (maps, edge_complete) = if opts.edge_autos {
            let autos = g.edge_automorphisms(&s.tree, opts.max_edge_autos, opts.edge_auto_budget);
            (autos.autos.iter().map(|a| to_slots(&a.dart_perm)).collect(), autos.complete)
        } else {
            (vec![identity_map], true)
        };
        let (group_autos, group_complete) = if opts.group_autos {
            let set = group.automorphisms(opts.max_group_autos);
            (set.autos, set.complete)
        } else {
            (vec![identity_group], true)
        };
        CanonContext { maps, group_autos, edge_autos_complete: edge_complete, group_autos_complete: group_complete }
    }

    pub fn edge_auto_count(&self) -> usize {
        self.maps.len()
    }

    pub fn group_auto_count(&self) -> usize {
        self.group_autos.len()
    }
}

/// True when some edge automorphism followed by some group automorphism
/// turns the voltage list on the useful darts into a lexicographically
/// smaller list. Only positions up to the first unassigned one take part,
/// so rejecting a partial assignment also rejects all its completions.
pub fn not_canonical(group: &FiniteGroup, ctx: &CanonContext, list: &[Option<usize>]) -> bool {
    let assigned = list.iter().take_while(|a| a.is_some()).count();
    if assigned == 0 {
        return false;
    }
    let mut permuted: Vec<Option<usize>> = vec![None; list.len()];
    for map in &ctx.maps {
        for (i, slot) in map.iter().enumerate() {
            permuted[i] = list[slot.pos as usize].map(|a| if slot.inverted { group.inv(a) } else { a });
        }
        for phi in &ctx.group_autos {
            for i in 0..assigned {
                let Some(b) = permuted[i] else { break };
                let c = phi.apply(b);
                let a = list[i].expect("within assigned prefix");
                if c < a {
                    return true;
                }
                if c > a {
                    break;
                }
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, direct_product, parse_group_spec};
    use crate::verify::girth;

    fn dumbbell() -> Pregraph {
        Pregraph::parse("pregraph 2 / 0 1 / 0 0 / 1 1").unwrap()
    }

    fn petersen_alpha(g: &Pregraph, c5: &FiniteGroup) -> VoltageAssignment {
        let mut a = VoltageAssignment::unassigned(g);
        a.set(g, c5, 0, 0);
        a.set(g, c5, 2, 2);
        a.set(g, c5, 4, 1);
        a
    }

    #[test]
    fn petersen_lift() {
        let g = dumbbell();
        let c5 = cyclic(5).unwrap();
        let l = lift(&g, &c5, &petersen_alpha(&g, &c5)).unwrap();
        assert_eq!(l.n(), 10);
        assert_eq!(l.regular_degree(), Some(3));
        assert_eq!(girth(&l), Some(5));
        assert_eq!(lift_girth_via_base(&g, &c5, &petersen_alpha(&g, &c5), 12), Some(5));
    }

    #[test]
    fn rejected_lifts() {
        let g = dumbbell();
        let c5 = cyclic(5).unwrap();
        let mut a = petersen_alpha(&g, &c5);
        a.set(&g, &c5, 2, 0);
        assert_eq!(lift(&g, &c5, &a), Err(LiftReject::Loop { dart: 2 }));
        assert_eq!(lift_girth_via_base(&g, &c5, &a, 12), Some(1));
        let par = Pregraph::parse("pregraph 2\n0 1\n0 1\n0 1\n").unwrap();
        let mut b = VoltageAssignment::zero(&par);
        b.set(&par, &c5, 4, 1);
        assert!(matches!(lift(&par, &c5, &b), Err(LiftReject::ParallelEdge { .. })));
        assert_eq!(lift_girth_via_base(&par, &c5, &b, 12), Some(2));
    }

    #[test]
    fn structural_examples() {
        let g = dumbbell();
        let Structural::Admissible(s) = structural_checks(&g, &cyclic(5).unwrap(), 5).unwrap() else { panic!() };
        assert_eq!(s.useful, vec![2, 4]);
        assert_eq!(s.admissible, vec![vec![1, 2, 3, 4], vec![1, 2, 3, 4]]);
        assert_eq!(s.base.get(0), Some(0));
        assert_eq!(s.base.get(2), None);
        assert!(matches!(
            structural_checks(&g, &cyclic(4).unwrap(), 5).unwrap(),
            Structural::Reject(StructuralReject::NoAdmissibleVoltage { dart: 2 })
        ));
        let semi = Pregraph::parse("pregraph 2\n0 1\n0 ;\n0 ;\n1 1\n").unwrap();
        assert!(matches!(
            structural_checks(&semi, &cyclic(5).unwrap(), 3).unwrap(),
            Structural::Reject(StructuralReject::TooManySemiEdges { vertex: 0, semi_edges: 2, involutions: 0 })
        ));
    }

    #[test]
    fn short_walk_detection() {
        let g = dumbbell();
        let c5 = cyclic(5).unwrap();
        let a = petersen_alpha(&g, &c5);
        assert!(!cannot_achieve_girth(&g, &c5, 4, 5, &a));

        // One loop with voltage 1 walked five times closes at length 5.
        let one = Pregraph::parse("pregraph 1\n0 0\n").unwrap();
        let mut b = VoltageAssignment::unassigned(&one);
        b.set(&one, &c5, 0, 1);
        assert!(!cannot_achieve_girth(&one, &c5, 0, 5, &b));
        assert!(cannot_achieve_girth(&one, &c5, 0, 6, &b));

        // Commutator walk a b a^-1 b^-1 in C2 x C2.
        let two = Pregraph::parse("pregraph 1\n0 0\n0 0\n").unwrap();
        let v4 = direct_product(&cyclic(2).unwrap(), &cyclic(2).unwrap()).unwrap();
        let mut c = VoltageAssignment::unassigned(&two);
        c.set(&two, &v4, 0, 2);
        c.set(&two, &v4, 2, 1);
        assert!(cannot_achieve_girth(&two, &v4, 2, 5, &c));
        // Involutions on loops also make the lift a multigraph.
        assert!(lift(&two, &v4, &c).is_err());
    }

    /// Every closed non-reversing walk up to `max` through a dart set,
    /// enumerated naively.
    fn brute_exists_short_walk(g: &Pregraph, group: &FiniteGroup, alpha: &VoltageAssignment, max: usize) -> bool {
        fn rec(g: &Pregraph, group: &FiniteGroup, alpha: &VoltageAssignment, start: usize, last: usize, net: usize, len: usize, max: usize) -> bool {
            let x = g.dart(last).head;
            if x == start && net == 0 {
                return true;
            }
            if len == max {
                return false;
            }
            g.out_darts(x).iter().any(|&d| {
                d != g.dart(last).inverse
                    && alpha.get(d).is_some_and(|a| rec(g, group, alpha, start, d, group.mul(net, a), len + 1, max))
            })
        }
        (0..g.darts().len()).any(|d| alpha.get(d).is_some_and(|a| rec(g, group, alpha, g.dart(d).tail, d, a, 1, max)))
    }

    #[test]
    fn incremental_check_matches_exhaustive_walks() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        let bases = [
            "pregraph 2\n0 1\n0 0\n1 1\n",
            "pregraph 2\n0 1\n0 1\n0 1\n",
            "pregraph 3\n0 1\n1 2\n2 0\n0 1\n1 2\n2 0\n",
            "pregraph 1\n0 0\n0 ;\n",
        ];
        for text in bases {
            let g = Pregraph::parse(text).unwrap();
            for spec in ["C6", "D3", "C2xC4", "C7"] {
                let group = parse_group_spec(spec).unwrap();
                for _ in 0..40 {
                    let mut a = VoltageAssignment::unassigned(&g);
                    for e in 0..g.edges().len() {
                        let d = g.edge_dart(e);
                        let v = if g.dart(d).semi {
                            let inv = group.involutions();
                            if inv.is_empty() { 0 } else { inv[rng.gen_range(0..inv.len())] }
                        } else {
                            rng.gen_range(0..group.order())
                        };
                        a.set(&g, &group, d, v);
                    }
                    // If no walk of length < 6 closes with identity, neither
                    // check may report one; if one does, the walk through the
                    // last-set dart may or may not exist, so only compare
                    // walks through each dart in turn.
                    for g_min in 3..7 {
                        let any = (0..g.darts().len()).any(|d| cannot_achieve_girth(&g, &group, d, g_min, &a));
                        assert_eq!(any, brute_exists_short_walk(&g, &group, &a, g_min - 1), "{text} {spec} g={g_min}");
                    }
                }
            }
        }
    }

    #[test]
    fn canonicity_on_dumbbell() {
        let g = dumbbell();
        let c5 = cyclic(5).unwrap();
        let Structural::Admissible(s) = structural_checks(&g, &c5, 5).unwrap() else { panic!() };
        let ctx = CanonContext::new(&g, &c5, &s, &CanonOptions::default());
        assert_eq!(ctx.edge_auto_count(), 2);
        assert_eq!(ctx.group_auto_count(), 4);
        assert!(not_canonical(&c5, &ctx, &[Some(2), Some(1)]));
        assert!(!not_canonical(&c5, &ctx, &[Some(1), Some(1)]));
        assert!(!not_canonical(&c5, &ctx, &[]));
        assert!(!not_canonical(&c5, &ctx, &[Some(1), None]));
        assert!(not_canonical(&c5, &ctx, &[Some(3), None]));
    }
}

use std::collections::VecDeque;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::group::FiniteGroup;
use crate::lift::{
    cannot_achieve_girth, lift, lift_girth_via_base, not_canonical, structural_checks, CanonContext, CanonOptions, Structural,
    StructuralReject, Structure,
};
use crate::pregraph::{Pregraph, PregraphError};
use crate::voltage::VoltageAssignment;

use super::bta::first_assignment;
use super::config::{SearchConfig, TabuMode};
use super::cost::{cost_girth, cost_reg};
use super::sink::{Found, Offer, Sink};

/// Fixed-capacity list of forbidden `(dart, voltage)` moves; the oldest
/// entry drops out when a new one arrives at capacity.
#[derive(Debug, Clone)]
pub struct TabuList {
    cap: usize,
    moves: VecDeque<(usize, usize)>,
}

impl TabuList {
    pub fn new(cap: usize) -> Self {
        TabuList { cap, moves: VecDeque::with_capacity(cap) }
    }

    pub fn push(&mut self, mv: (usize, usize)) {
        if self.cap == 0 {
            return;
        }
        if self.moves.len() == self.cap {
            self.moves.pop_front();
        }
        self.moves.push_back(mv);
    }

    pub fn contains(&self, mv: (usize, usize)) -> bool {
        self.moves.contains(&mv)
    }

    pub fn newest(&self) -> Option<(usize, usize)> {
        self.moves.back().copied()
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    pub fn capacity(&self) -> usize {
        self.cap
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum TabuStatus {
    Ran,
    Rejected(StructuralReject),
    /// No initial assignment within the init budget.
    InitTimeout,
    /// The initial search finished without any assignment.
    NoInitial,
}

#[derive(Debug, Clone)]
pub struct TabuOutcome {
    pub status: TabuStatus,
    pub iterations: u64,
    pub best_cost: f64,
    pub emitted: u64,
    pub best: Option<VoltageAssignment>,
}

impl TabuOutcome {
    fn stopped(status: TabuStatus) -> Self {
        TabuOutcome { status, iterations: 0, best_cost: f64::INFINITY, emitted: 0, best: None }
    }
}

struct State<'a> {
    g: &'a Pregraph,
    group: &'a FiniteGroup,
    s: &'a Structure,
    ctx: &'a CanonContext,
    alpha: VoltageAssignment,
    list: Vec<Option<usize>>,
    g_nbr: usize,
}

impl State<'_> {
    fn set(&mut self, pos: usize, b: usize) {
        self.alpha.set(self.g, self.group, self.s.useful[pos], b);
        self.list[pos] = Some(b);
    }

    /// Whether the current assignment, just changed at `pos`, is a valid
    /// neighbor.
    fn admissible(&self, pos: usize, canon: bool) -> bool {
        !cannot_achieve_girth(self.g, self.group, self.s.useful[pos], self.g_nbr, &self.alpha)
            && !(canon && not_canonical(self.group, self.ctx, &self.list))
    }

    /// Applies up to `moves` random single-dart changes that keep the
    /// neighbor girth.
    fn perturb(&mut self, moves: usize, rng: &mut ChaCha8Rng) {
        let len = self.s.useful.len();
        if len == 0 {
            return;
        }
        for _ in 0..moves {
            for _ in 0..32 {
                let pos = rng.gen_range(0..len);
                let set = &self.s.admissible[pos];
                let b = set[rng.gen_range(0..set.len())];
                let old = self.list[pos].expect("total assignment");
                if b == old {
                    continue;
                }
                self.set(pos, b);
                if self.admissible(pos, false) {
                    break;
                }
                self.set(pos, old);
            }
        }
    }
}

/// Tabu search over single-edge voltage changes, started from the first
/// assignment found by backtracking at the neighbor girth. Every visited
/// assignment whose lift reaches `cfg.g_min` is offered to `sink`.
pub fn tabu_search(g: &Pregraph, group: &FiniteGroup, cfg: &SearchConfig, mode: TabuMode, sink: &dyn Sink) -> Result<TabuOutcome, PregraphError> {
    let start = Instant::now();
    let s = match structural_checks(g, group, cfg.g_min)? {
        Structural::Admissible(s) => s,
        Structural::Reject(r) => return Ok(TabuOutcome::stopped(TabuStatus::Rejected(r))),
    };
    let g_nbr = cfg.g_nbr(mode);
    let ctx = CanonContext::new(g, group, &s, &cfg.canon_options());
    let (init, exhaustive) = first_assignment(g, group, &s, &ctx, g_nbr, start + cfg.t_ts_init);
    let Some(alpha) = init else {
        return Ok(TabuOutcome::stopped(if exhaustive { TabuStatus::NoInitial } else { TabuStatus::InitTimeout }));
    };
    let nbr_ctx;
    let ctx = if cfg.canon_filter_ts {
        &ctx
    } else {
        nbr_ctx = CanonContext::new(g, group, &s, &CanonOptions { enabled: false, ..cfg.canon_options() });
        &nbr_ctx
    };
    let list = alpha.on(&s.useful);
    let mut st = State { g, group, s: &s, ctx, alpha, list, g_nbr };
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
    let cost = |alpha: &VoltageAssignment, rng: &mut ChaCha8Rng| match mode {
        TabuMode::Girth => cost_girth(g, group, alpha, cfg.walk_samples_m, cfg.penalty_c, cfg.walk_max_len(), rng),
        TabuMode::Regularity => cost_reg(g, group, alpha, 2 * cfg.g_min),
    };

    let deadline = start + cfg.t_ts;
    let mut tabu = TabuList::new(cfg.tabu_capacity(group.order()));
    let mut c_global = f64::INFINITY;
    let mut best = None;
    let mut since_improvement = 0;
    let mut iterations = 0u64;
    let mut emitted = 0u64;
    while Instant::now() < deadline && (cfg.max_iterations == 0 || iterations < cfg.max_iterations as u64) && !sink.satisfied() {
        iterations += 1;
        if lift_girth_via_base(g, group, &st.alpha, cfg.g_min.saturating_sub(1)).is_none() {
            if let Ok(h) = lift(g, group, &st.alpha) {
                if sink.offer(Found { graph: &h, base: g, group, alpha: &st.alpha, mode: "tabu" }) == Offer::Emitted {
                    emitted += 1;
                }
            }
        }
        if since_improvement >= cfg.stagnation_limit {
            st.perturb(cfg.perturb_moves, &mut rng);
            since_improvement = 0;
        }

        let mut choice: Option<(f64, usize, usize)> = None;
        for pos in 0..s.useful.len() {
            let a = st.list[pos].expect("total assignment");
            for &b in &s.admissible[pos] {
                if b == a {
                    continue;
                }
                st.set(pos, b);
                if st.admissible(pos, true) {
                    let c = cost(&st.alpha, &mut rng);
                    let d = s.useful[pos];
                    if c < choice.map_or(f64::INFINITY, |x| x.0) && (!tabu.contains((d, b)) || c < c_global) {
                        choice = Some((c, pos, b));
                    }
                }
            }
            st.set(pos, a);
        }

        match choice {
            Some((c, pos, b)) => {
                if c < c_global {
                    c_global = c;
                    since_improvement = 0;
                } else {
                    since_improvement += 1;
                }
                let old = st.list[pos].expect("total assignment");
                st.set(pos, b);
                if c <= c_global {
                    best = Some(st.alpha.clone());
                }
                tabu.push((s.useful[pos], old));
            }
            None => {
                st.perturb(cfg.perturb_moves, &mut rng);
                since_improvement += 1;
            }
        }
    }
    Ok(TabuOutcome { status: TabuStatus::Ran, iterations, best_cost: c_global, emitted, best })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::SimpleGraph;
    use crate::group::cyclic;
    use crate::search::sink::{CollectSink, Problem};
    use crate::verify::canonical_digest;
    use std::time::Duration;

    #[test]
    fn tabu_list_evicts_oldest() {
        let mut t = TabuList::new(3);
        for i in 0..5 {
            t.push((i, i));
            assert!(t.len() <= 3);
            assert_eq!(t.newest(), Some((i, i)));
        }
        assert!(!t.contains((1, 1)));
        assert!(t.contains((2, 2)) && t.contains((4, 4)));
    }

    #[test]
    fn finds_petersen() {
        let g = Pregraph::parse("pregraph 2 / 0 1 / 0 0 / 1 1").unwrap();
        let sink = CollectSink::new(Problem::Cage { k: 3, g: 5 }).stop_after(1);
        let cfg = SearchConfig { rng_seed: 7, ..SearchConfig::with_girth(5) };
        let out = tabu_search(&g, &cyclic(5).unwrap(), &cfg, TabuMode::Girth, &sink).unwrap();
        assert_eq!(out.status, TabuStatus::Ran);
        assert_eq!(sink.collected()[0].digest, canonical_digest(&SimpleGraph::petersen()));
    }

    #[test]
    fn regularity_mode_runs() {
        let g = Pregraph::parse("pregraph 2 / 0 1 / 0 0 / 1 1").unwrap();
        let sink = CollectSink::new(Problem::Vgr { k: 3, g: 5, lambda: None });
        let cfg = SearchConfig { max_iterations: 20, t_ts: Duration::from_secs(5), ..SearchConfig::with_girth(5) };
        let out = tabu_search(&g, &cyclic(5).unwrap(), &cfg, TabuMode::Regularity, &sink).unwrap();
        assert_eq!(out.status, TabuStatus::Ran);
        assert_eq!(out.best_cost, 0.0);
        assert_eq!(sink.digests().len(), 1);
    }

    #[test]
    fn missing_initial_solution() {
        // A cubic graph of girth 7 needs at least 22 vertices.
        let g = Pregraph::parse("pregraph 2 / 0 1 / 0 0 / 1 1").unwrap();
        let sink = CollectSink::new(Problem::Cage { k: 3, g: 7 });
        let cfg = SearchConfig { g_nbr: Some(7), ..SearchConfig::with_girth(7) };
        let out = tabu_search(&g, &cyclic(7).unwrap(), &cfg, TabuMode::Girth, &sink).unwrap();
        assert_eq!(out.status, TabuStatus::NoInitial);
    }
}

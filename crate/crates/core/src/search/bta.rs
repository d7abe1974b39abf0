use std::time::Instant;

use crate::group::FiniteGroup;
use crate::lift::{cannot_achieve_girth, lift, not_canonical, structural_checks, CanonContext, Structural, StructuralReject, Structure};
use crate::pregraph::{Pregraph, PregraphError};
use crate::voltage::VoltageAssignment;

use super::config::SearchConfig;
use super::sink::{Found, Offer, Sink};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Flow {
    Continue,
    Stop,
}

/// Depth-first assignment of voltages to the useful darts, pruned by short
/// walks through the newest dart and by prefix canonicity.
pub(crate) struct Backtracker<'a> {
    g: &'a Pregraph,
    group: &'a FiniteGroup,
    s: &'a Structure,
    ctx: &'a CanonContext,
    g_min: usize,
    deadline: Instant,
    alpha: VoltageAssignment,
    list: Vec<Option<usize>>,
    pub timed_out: bool,
    pub stopped: bool,
    pub leaves: u64,
}

impl<'a> Backtracker<'a> {
    pub fn new(g: &'a Pregraph, group: &'a FiniteGroup, s: &'a Structure, ctx: &'a CanonContext, g_min: usize, deadline: Instant) -> Self {
        Backtracker {
            g,
            group,
            s,
            ctx,
            g_min,
            deadline,
            alpha: s.base.clone(),
            list: vec![None; s.useful.len()],
            timed_out: false,
            stopped: false,
            leaves: 0,
        }
    }

    /// Calls `visit` on every surviving total assignment. Returns true when
    /// the space was exhausted.
    pub fn run(&mut self, visit: &mut dyn FnMut(&VoltageAssignment) -> Flow) -> bool {
        self.rec(0, visit);
        !self.timed_out && !self.stopped
    }

    fn rec(&mut self, pos: usize, visit: &mut dyn FnMut(&VoltageAssignment) -> Flow) {
        if pos == self.s.useful.len() {
            self.leaves += 1;
            if visit(&self.alpha) == Flow::Stop {
                self.stopped = true;
            }
            return;
        }
        let d = self.s.useful[pos];
        for &a in &self.s.admissible[pos] {
            if self.stopped || self.timed_out {
                break;
            }
            if Instant::now() >= self.deadline {
                self.timed_out = true;
                break;
            }
            self.alpha.set(self.g, self.group, d, a);
            self.list[pos] = Some(a);
            if cannot_achieve_girth(self.g, self.group, d, self.g_min, &self.alpha) || not_canonical(self.group, self.ctx, &self.list) {
                continue;
            }
            self.rec(pos + 1, visit);
        }
        self.alpha.clear(self.g, d);
        self.list[pos] = None;
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BtaOutcome {
    pub rejected: Option<StructuralReject>,
    /// Total assignments that survived every exclusion.
    pub assignments: u64,
    pub emitted: u64,
    /// True when the whole space was explored within the budget.
    pub complete: bool,
}

/// Exhaustive backtracking over canonical assignments achieving
/// `cfg.g_min`; every surviving lift is offered to `sink`.
pub fn bta(g: &Pregraph, group: &FiniteGroup, cfg: &SearchConfig, sink: &dyn Sink) -> Result<BtaOutcome, PregraphError> {
    let start = Instant::now();
    let s = match structural_checks(g, group, cfg.g_min)? {
        Structural::Admissible(s) => s,
        Structural::Reject(r) => return Ok(BtaOutcome { rejected: Some(r), assignments: 0, emitted: 0, complete: true }),
    };
    let ctx = CanonContext::new(g, group, &s, &cfg.canon_options());
    let mut emitted = 0;
    let mut bt = Backtracker::new(g, group, &s, &ctx, cfg.g_min, start + cfg.t_bta);
    let exhausted = bt.run(&mut |alpha| {
        if let Ok(h) = lift(g, group, alpha) {
            if sink.offer(Found { graph: &h, base: g, group, alpha, mode: "bta" }) == Offer::Emitted {
                emitted += 1;
            }
        }
        if sink.satisfied() {
            Flow::Stop
        } else {
            Flow::Continue
        }
    });
    Ok(BtaOutcome { rejected: None, assignments: bt.leaves, emitted, complete: exhausted })
}

/// First assignment in search order that achieves `g_min`, if one is found
/// before `deadline`. The flag reports whether the search was exhaustive.
pub(crate) fn first_assignment(
    g: &Pregraph,
    group: &FiniteGroup,
    s: &Structure,
    ctx: &CanonContext,
    g_min: usize,
    deadline: Instant,
) -> (Option<VoltageAssignment>, bool) {
    let mut found = None;
    let mut bt = Backtracker::new(g, group, s, ctx, g_min, deadline);
    bt.run(&mut |alpha| {
        found = Some(alpha.clone());
        Flow::Stop
    });
    let exhaustive = !bt.timed_out;
    (found, exhaustive)
}

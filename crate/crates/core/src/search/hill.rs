use std::time::{Duration, Instant};

use crate::graph::SimpleGraph;
use crate::group::FiniteGroup;
use crate::lift::{cannot_achieve_girth, lift};
use crate::pregraph::{Edge, Pregraph};
use crate::voltage::VoltageAssignment;

use super::sink::{Found, Offer, Sink};

/// One hill-climbing move: a full edge or loop with the voltage on its
/// forward dart.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Move {
    pub u: usize,
    pub v: usize,
    pub voltage: usize,
}

#[derive(Debug, Clone)]
pub struct HillOutcome {
    pub base: Pregraph,
    pub alpha: VoltageAssignment,
    pub lift: Option<SimpleGraph>,
    pub steps: usize,
    /// True when no move was left, false when the budget ran out.
    pub exhausted: bool,
    pub emitted: u64,
}

fn apply(g: &Pregraph, alpha: &VoltageAssignment, group: &FiniteGroup, mv: Move) -> (Pregraph, VoltageAssignment) {
    let h = g.with_edge(Edge::Full(mv.u, mv.v)).expect("move endpoints are in range");
    let mut a = alpha.clone();
    a.grow_to(&h);
    a.set(&h, group, h.edge_dart(h.edges().len() - 1), mv.voltage);
    (h, a)
}

/// Moves that keep the lift girth at least `girth`, ordered by
/// `(u, v, voltage)`. A loop and its reverse give the same lift, so loops
/// only take voltages no larger than their inverse.
pub fn admissible_moves(g: &Pregraph, alpha: &VoltageAssignment, group: &FiniteGroup, girth: usize) -> Vec<Move> {
    let mut out = Vec::new();
    for u in 0..g.n() {
        for v in u..g.n() {
            for voltage in 0..group.order() {
                if u == v && (voltage == 0 || group.inv(voltage) < voltage) {
                    continue;
                }
                let mv = Move { u, v, voltage };
                let (h, a) = apply(g, alpha, group, mv);
                if !cannot_achieve_girth(&h, group, h.edge_dart(h.edges().len() - 1), girth, &a) {
                    out.push(mv);
                }
            }
        }
    }
    out
}

/// Greedy growth from `n` isolated vertices: each step adds the move that
/// leaves the most admissible moves afterwards, ties to the first in move
/// order. Each intermediate lift is offered to `sink`.
pub fn hill_climb(n: usize, group: &FiniteGroup, girth: usize, budget: Duration, sink: &dyn Sink) -> HillOutcome {
    let deadline = Instant::now() + budget;
    let mut g = Pregraph::edgeless(n).expect("at least one vertex");
    let mut alpha = VoltageAssignment::unassigned(&g);
    let mut current = None;
    let mut steps = 0;
    let mut emitted = 0;
    let mut exhausted = false;
    while Instant::now() < deadline && !sink.satisfied() {
        let moves = admissible_moves(&g, &alpha, group, girth);
        if moves.is_empty() {
            exhausted = true;
            break;
        }
        let mut best: Option<(usize, Move)> = None;
        for &mv in &moves {
            if Instant::now() >= deadline {
                break;
            }
            let (h, a) = apply(&g, &alpha, group, mv);
            let score = admissible_moves(&h, &a, group, girth).len();
            if best.is_none_or(|(s, _)| score > s) {
                best = Some((score, mv));
            }
        }
        let Some((_, mv)) = best else { break };
        (g, alpha) = apply(&g, &alpha, group, mv);
        steps += 1;
        if let Ok(h) = lift(&g, group, &alpha) {
            if sink.offer(Found { graph: &h, base: &g, group, alpha: &alpha, mode: "hill" }) == Offer::Emitted {
                emitted += 1;
            }
            current = Some(h);
        }
    }
    HillOutcome { base: g, alpha, lift: current, steps, exhausted, emitted }
}

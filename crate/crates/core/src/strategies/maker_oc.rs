//! Maker's hub-and-star strategy.
//!
//! Maker grows a star around the current hub w_k while she can, then hangs a
//! fresh vertex off one of her leaves and makes it the next hub. Her graph
//! stays a tree whose two sides are the hubs and the leaves, so any odd cycle
//! she can close comes from an edge inside one side.

use crate::board::{GameState, Turn, Vertex};
use crate::engine::{Action, Decision, Strategy, StrategyError};

pub const CLOSE_ODD: &str = "maker-oc/close-odd";
pub const GROW_STAR: &str = "maker-oc/grow-star";
pub const NEW_HUB: &str = "maker-oc/new-hub";
pub const FORFEIT: &str = "maker-oc/forfeit";

/// Hubs w_0..w_k and the leaves B_0..B_k claimed in each phase.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MakerPhaseState {
    pub hubs: Vec<Vertex>,
    pub leaves: Vec<Vec<Vertex>>,
}

impl MakerPhaseState {
    pub fn new(first_hub: Vertex) -> Self {
        Self {
            hubs: vec![first_hub],
            leaves: vec![Vec::new()],
        }
    }

    pub fn phase(&self) -> usize {
        self.hubs.len() - 1
    }

    pub fn hub(&self) -> Vertex {
        *self.hubs.last().expect("at least one hub")
    }

    pub fn all_leaves(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.leaves.iter().flatten().copied()
    }
}

#[derive(Clone, Debug)]
pub struct MakerOc {
    phase: MakerPhaseState,
}

impl MakerOc {
    pub fn new() -> Self {
        Self::with_first_hub(0)
    }

    pub fn with_first_hub(w0: Vertex) -> Self {
        Self {
            phase: MakerPhaseState::new(w0),
        }
    }

    pub fn phase(&self) -> &MakerPhaseState {
        &self.phase
    }

    fn check_consistent(&self, state: &GameState) -> Result<(), StrategyError> {
        let n = state.n();
        if self.phase.hubs.iter().copied().chain(self.phase.all_leaves()).any(|v| v >= n) {
            return Err(StrategyError("phase refers to a vertex outside the board".into()));
        }
        for v in self.phase.all_leaves() {
            if state.part_of(v).is_none() {
                return Err(StrategyError(format!(
                    "leaf {v} is not part of Maker's graph"
                )));
            }
        }
        Ok(())
    }
}

impl Default for MakerOc {
    fn default() -> Self {
        Self::new()
    }
}

/// The move [`MakerOc`] would make and the phase it leads to.
pub fn maker_oc_move(
    state: &GameState,
    phase: &MakerPhaseState,
) -> (Decision, MakerPhaseState) {
    let mut next = phase.clone();
    if let Some(&e) = state.odd_closers().iter().next() {
        return (Decision::new(Action::Claim(e), CLOSE_ODD), next);
    }

    let hub = phase.hub();
    let r = state.untouched();
    let mut open = state.unclaimed_adj(hub);
    open.intersect_with(r);
    if let Some(u) = open.first() {
        next.leaves.last_mut().expect("phase has a leaf set").push(u);
        return (Decision::new(Action::Claim(state.edge(hub, u)), GROW_STAR), next);
    }

    // Degree of u into R \ {u} must leave room for b claims plus one.
    let limit = r.len() as i64 - state.b() as i64 - 2;
    let mut best = None;
    for x in phase.all_leaves() {
        let mut reach = state.unclaimed_adj(x);
        reach.intersect_with(r);
        for u in reach.iter() {
            if (state.blocker_deg_into(u, r) as i64) <= limit {
                let e = state.edge(x, u);
                if best.is_none_or(|(b, _)| e < b) {
                    best = Some((e, u));
                }
            }
        }
    }
    if let Some((e, u)) = best {
        next.hubs.push(u);
        next.leaves.push(Vec::new());
        return (Decision::new(Action::Claim(e), NEW_HUB), next);
    }
    (
        Decision::new(Action::Forfeit("no hub candidate left".into()), FORFEIT),
        next,
    )
}

impl Strategy for MakerOc {
    fn name(&self) -> &str {
        "maker-oc"
    }

    fn decide(&mut self, state: &GameState) -> Result<Decision, StrategyError> {
        if state.turn != Turn::BuilderClaim {
            return Err(StrategyError("maker-oc asked to move out of turn".into()));
        }
        self.check_consistent(state)?;
        let (decision, next) = maker_oc_move(state, &self.phase);
        self.phase = next;
        Ok(decision)
    }

    fn clone_box(&self) -> Box<dyn Strategy> {
        Box::new(self.clone())
    }

    fn memo_key(&self) -> Vec<u8> {
        let mut key = Vec::new();
        for (hub, leaves) in self.phase.hubs.iter().zip(&self.phase.leaves) {
            key.push(*hub as u8);
            key.push(leaves.len() as u8);
            key.extend(leaves.iter().map(|&v| v as u8));
        }
        key
    }
}

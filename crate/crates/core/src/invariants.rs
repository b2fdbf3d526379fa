//! Invariant hooks for the engine, one per structural property the
//! strategies are expected to keep.

use std::sync::{Arc, Mutex};

use crate::board::{GameState, Part, Turn};
use crate::engine::{Action, InvariantHook, MetricsSnapshot, Move, Role};
use crate::strategies::breaker_connected::is_fallback_branch;
use crate::strategies::client_connected::{self, compute_critical};

/// Degrees from R into V differ by at most 2, and into each part by at most
/// 1, until Breaker first falls back to saturating or arbitrary claims.
#[derive(Default)]
pub struct DegreeRegularity {
    fallback_seen: bool,
}

impl DegreeRegularity {
    pub fn new() -> Self {
        Self::default()
    }
}

/// Largest minus smallest of `f(v)` over R.
fn spread(state: &GameState, f: impl Fn(usize) -> usize) -> usize {
    let mut lo = usize::MAX;
    let mut hi = 0;
    for v in state.untouched().iter() {
        let d = f(v);
        lo = lo.min(d);
        hi = hi.max(d);
    }
    hi.saturating_sub(lo)
}

impl InvariantHook for DegreeRegularity {
    fn name(&self) -> &str {
        "degree-regularity"
    }

    fn check(&mut self, state: &GameState, mv: &Move) -> Result<(), String> {
        if is_fallback_branch(&mv.branch) {
            self.fallback_seen = true;
        }
        if self.fallback_seen {
            return Ok(());
        }
        let v1 = state.part_set(Part::One);
        let v2 = state.part_set(Part::Two);
        let total = spread(state, |v| state.blocker_deg_into(v, v1) + state.blocker_deg_into(v, v2));
        let s1 = spread(state, |v| state.blocker_deg_into(v, v1));
        let s2 = spread(state, |v| state.blocker_deg_into(v, v2));
        if total > 2 || s1 > 1 || s2 > 1 {
            return Err(format!(
                "degree spread into V is {total}, into V¹ {s1}, into V² {s2}"
            ));
        }
        Ok(())
    }
}

/// Blocker-free edges between the parts never become fewer, until Breaker
/// first falls back to saturating or arbitrary claims.
#[derive(Default)]
pub struct SavedMonotone {
    last: usize,
    fallback_seen: bool,
}

impl InvariantHook for SavedMonotone {
    fn name(&self) -> &str {
        "saved-monotone"
    }

    fn check(&mut self, state: &GameState, mv: &Move) -> Result<(), String> {
        self.fallback_seen |= mv.role == Role::Breaker && is_fallback_branch(&mv.branch);
        if self.fallback_seen {
            return Ok(());
        }
        let saved = MetricsSnapshot::capture(state).saved;
        if saved < self.last {
            return Err(format!("saved edges dropped from {} to {saved}", self.last));
        }
        self.last = saved;
        Ok(())
    }
}

/// Records a metrics snapshot at the end of every round.
#[derive(Clone, Default)]
pub struct RoundMetrics {
    snapshots: Arc<Mutex<Vec<MetricsSnapshot>>>,
}

impl RoundMetrics {
    pub fn new() -> Self {
        Self::default()
    }

    /// Handle sharing the same storage; give one to the engine, read the other.
    pub fn handle(&self) -> Self {
        self.clone()
    }

    pub fn snapshots(&self) -> Vec<MetricsSnapshot> {
        self.snapshots.lock().expect("metrics lock").clone()
    }
}

impl InvariantHook for RoundMetrics {
    fn name(&self) -> &str {
        "round-metrics"
    }

    fn check(&mut self, state: &GameState, _: &Move) -> Result<(), String> {
        let round_over = matches!(state.turn, Turn::BuilderClaim | Turn::WaiterOffer);
        if round_over || state.is_over() {
            let snap = MetricsSnapshot::capture(state);
            let mut all = self.snapshots.lock().expect("metrics lock");
            if all.last().map(|m| (m.s, m.k)) != Some((snap.s, snap.k)) {
                all.push(snap);
            }
        }
        Ok(())
    }
}

/// Client-side structure while Client follows her connected strategy: she
/// never gives up, and as long as no same-part edge is open her graph is a
/// tree, at most one part is critical and every critical vertex has exactly
/// one unclaimed edge to V.
#[derive(Default)]
pub struct ClientLemmas;

fn builder_graph_is_tree(state: &GameState) -> bool {
    let touched = state.touched();
    if touched.is_empty() {
        return true;
    }
    if state.builder_edge_count() + 1 != touched.len() {
        return false;
    }
    let first = touched.first().expect("nonempty");
    touched.iter().all(|v| state.forest().same_component(first, v))
}

impl InvariantHook for ClientLemmas {
    fn name(&self) -> &str {
        "client-lemmas"
    }

    fn check(&mut self, state: &GameState, mv: &Move) -> Result<(), String> {
        if mv.role != Role::Client {
            return Ok(());
        }
        if mv.branch == client_connected::FORFEIT || matches!(mv.action, Action::Forfeit(_)) {
            return Err("Client gave up".into());
        }
        if state.is_over() || !state.odd_closers().is_empty() {
            return Ok(());
        }
        if !builder_graph_is_tree(state) {
            return Err("Client's graph is not a tree".into());
        }
        let report = compute_critical(state);
        if report.parts.iter().all(|&c| c) {
            return Err("both parts are critical".into());
        }
        let v = state.touched();
        for x in report.critical_vertices() {
            let mut open = state.unclaimed_adj(x);
            open.intersect_with(&v);
            if open.len() != 1 {
                return Err(format!(
                    "critical vertex {x} has {} unclaimed edges to V",
                    open.len()
                ));
            }
        }
        Ok(())
    }
}

/// Checks on a finished game that need the whole transcript.
pub mod post_game {
    use crate::board::{GameState, Part, Side, Winner};
    use crate::engine::{step, MetricsSnapshot, Role, Strategy, Transcript};
    use crate::optimizer::{gnb_membership, GnbLabels};
    use crate::strategies::breaker_connected::is_fallback_branch;
    use crate::strategies::{MakerOc, MakerPhaseState};

    /// Breaker lost: no fallback branch was used and every end-of-round
    /// saved count stayed within `budget`.
    pub fn breaker_loss(t: &Transcript, rounds: &[MetricsSnapshot], budget: usize) -> Result<(), String> {
        if t.result.map(|r| r.winner) != Some(Winner::Builder) {
            return Ok(());
        }
        if let Some(mv) = t
            .moves
            .iter()
            .find(|m| m.role == Role::Breaker && is_fallback_branch(&m.branch))
        {
            return Err(format!("fallback branch {} at ({}, {})", mv.branch, mv.s, mv.k));
        }
        match rounds.iter().find(|m| m.saved > budget) {
            Some(m) => Err(format!("{} saved edges after round {}, budget {budget}", m.saved, m.s)),
            None => Ok(()),
        }
    }

    /// Re-runs the hub-and-star Maker along the transcript, checking it
    /// made every recorded Maker move, and returns its final phase state.
    pub fn replay_maker_oc(t: &Transcript) -> Result<(GameState, MakerPhaseState), String> {
        let mut state = GameState::new(t.config);
        let mut maker = MakerOc::new();
        for mv in &t.moves {
            if mv.role == Role::Maker {
                let d = maker.decide(&state).map_err(|e| e.to_string())?;
                if d.action != mv.action {
                    return Err(format!("Maker move at ({}, {}) differs from the strategy", mv.s, mv.k));
                }
            }
            step(&mut state, mv.action.clone(), &mv.branch).map_err(|e| e.to_string())?;
        }
        Ok((state, maker.phase().clone()))
    }

    /// Maker lost: her graph is a tree with sides hubs / leaves and
    /// Breaker's graph, labelled by hubs and leaf sets, passes all four
    /// membership clauses.
    pub fn maker_oc_loss(t: &Transcript) -> Result<(), String> {
        if t.result.map(|r| r.winner) != Some(Winner::Blocker) {
            return Ok(());
        }
        let (state, phase) = replay_maker_oc(t)?;
        let touched = state.touched();
        if state.builder_edge_count() + 1 != touched.len() {
            return Err(format!(
                "Maker has {} edges on {} vertices",
                state.builder_edge_count(),
                touched.len()
            ));
        }
        let first = touched.first().ok_or("Maker never moved")?;
        if !touched.iter().all(|v| state.forest().same_component(first, v)) {
            return Err("Maker's graph is disconnected".into());
        }
        let hub_part = state.part_of(phase.hubs[0]);
        let leaf_part = hub_part.map(Part::other);
        if phase.hubs.iter().any(|&h| state.part_of(h) != hub_part)
            || phase.all_leaves().any(|x| state.part_of(x) != leaf_part)
            || phase.hubs.len() + phase.all_leaves().count() != touched.len()
        {
            return Err("Maker's sides are not hubs versus leaves".into());
        }
        let edges: Vec<(usize, usize)> = state
            .edges_of(Side::Blocker)
            .into_iter()
            .map(|e| state.endpoints(e))
            .collect();
        let labels = GnbLabels {
            v: phase.hubs.clone(),
            a: phase.leaves.clone(),
        };
        let m = gnb_membership(state.n(), state.b(), &edges, &labels);
        match m.violated {
            None => Ok(()),
            Some((clause, detail)) => Err(format!("Breaker graph fails clause {clause:?}: {detail}")),
        }
    }
}

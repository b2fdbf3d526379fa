//! Breaker's balancing strategy for the connected game.
//!
//! Breaker first kills every threat inside a part of Maker's bipartition.
//! With the rest of his turn he spreads edges from the untouched vertices to
//! both parts as evenly as he can, always feeding the part with fewer edges
//! to R first.

use crate::board::{EdgeId, GameState, Part, Turn, Vertex};
use crate::engine::{Action, Decision, Strategy, StrategyError};
use crate::vertex_set::VertexSet;

pub const KILL_THREAT: &str = "breaker-connected/kill-threat";
pub const SATURATE: &str = "breaker-connected/saturate";
pub const BALANCE_LIGHTER: &str = "breaker-connected/balance-lighter";
pub const BALANCE_HEAVIER: &str = "breaker-connected/balance-heavier";
pub const ARBITRARY: &str = "breaker-connected/arbitrary";
pub const FORFEIT: &str = "breaker-connected/forfeit";

/// Branches that never fire in a game Breaker goes on to lose.
pub fn is_fallback_branch(branch: &str) -> bool {
    branch == SATURATE || branch == ARBITRARY
}

#[derive(Clone, Debug, Default)]
pub struct BreakerConnected;

/// The part with fewer blocker edges to R comes first; V¹ on a tie.
pub fn lighter_part(state: &GameState) -> (Part, Part) {
    let e1 = state.blocker_edges_part_to_r(Part::One);
    let e2 = state.blocker_edges_part_to_r(Part::Two);
    if e1 <= e2 {
        (Part::One, Part::Two)
    } else {
        (Part::Two, Part::One)
    }
}

fn open_edges_to(state: &GameState, v: Vertex, part: &VertexSet) -> VertexSet {
    let mut open = state.unclaimed_adj(v);
    open.intersect_with(part);
    open
}

/// Lowest-id unclaimed edge from `v` into `part`, if any.
fn lowest_edge_to(state: &GameState, v: Vertex, part: &VertexSet) -> Option<EdgeId> {
    open_edges_to(state, v, part)
        .first()
        .map(|x| state.edge(v, x))
}

/// Picks the move for the claim with 1-based index `k` in the current turn,
/// `left` claims (including this one) remaining.
pub fn breaker_connected_move(state: &GameState, k: usize, left: usize) -> Decision {
    let threats = state.odd_closers();
    if threats.len() > left {
        return Decision::new(
            Action::Forfeit(format!(
                "{} threats with {left} claims left",
                threats.len()
            )),
            FORFEIT,
        );
    }
    if let Some(&e) = threats.iter().next() {
        return Decision::new(Action::Claim(e), KILL_THREAT);
    }

    let b = state.b();
    let r = state.untouched();
    let (i1, i2) = lighter_part(state);

    if r.len() <= b {
        let budget = (b + 1).saturating_sub(k);
        let mut best: Option<EdgeId> = None;
        for p in [i1, i2] {
            let part = state.part_set(p);
            let count: usize = r.iter().map(|v| open_edges_to(state, v, part).len()).sum();
            if count >= 1 && count <= budget {
                for v in r.iter() {
                    if let Some(e) = lowest_edge_to(state, v, part) {
                        if best.is_none_or(|b| e < b) {
                            best = Some(e);
                        }
                    }
                }
            }
        }
        if let Some(e) = best {
            return Decision::new(Action::Claim(e), SATURATE);
        }
    }

    let p1 = state.part_set(i1);
    let p2 = state.part_set(i2);
    // (deg into V^{i1}, -(deg into V^{i2} - deg into V^{i1}), edge)
    let mut best: Option<(usize, i64, EdgeId)> = None;
    for v in r.iter() {
        if let Some(e) = lowest_edge_to(state, v, p1) {
            let d1 = state.blocker_deg_into(v, p1);
            let d2 = state.blocker_deg_into(v, p2);
            let key = (d1, d1 as i64 - d2 as i64, e);
            if best.is_none_or(|b| key < b) {
                best = Some(key);
            }
        }
    }
    if let Some((_, _, e)) = best {
        return Decision::new(Action::Claim(e), BALANCE_LIGHTER);
    }

    let mut best: Option<(usize, EdgeId)> = None;
    for v in r.iter() {
        if let Some(e) = lowest_edge_to(state, v, p2) {
            let key = (state.blocker_deg_into(v, p2), e);
            if best.is_none_or(|b| key < b) {
                best = Some(key);
            }
        }
    }
    if let Some((_, e)) = best {
        return Decision::new(Action::Claim(e), BALANCE_HEAVIER);
    }

    match state.unclaimed_edges().first() {
        Some(&e) => Decision::new(Action::Claim(e), ARBITRARY),
        None => Decision::new(Action::Forfeit("board is full".into()), FORFEIT),
    }
}

impl Strategy for BreakerConnected {
    fn name(&self) -> &str {
        "breaker-connected"
    }

    fn decide(&mut self, state: &GameState) -> Result<Decision, StrategyError> {
        match state.turn {
            Turn::BlockerClaim { left } => Ok(breaker_connected_move(state, state.k + 1, left)),
            _ => Err(StrategyError(
                "breaker-connected asked to move out of turn".into(),
            )),
        }
    }

    fn clone_box(&self) -> Box<dyn Strategy> {
        Box::new(self.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::board::{GameConfig, Rules, Side};

    fn connected(n: usize, b: usize) -> GameState {
        GameState::new(GameConfig::maker_breaker(n, b, Rules::Connected).unwrap())
    }

    #[test]
    fn kills_threat_first() {
        let mut s = connected(6, 2);
        s.apply_claim(Side::Builder, s.edge(0, 1)).unwrap();
        s.apply_claim(Side::Builder, s.edge(1, 2)).unwrap();
        let d = breaker_connected_move(&s, 1, 2);
        assert_eq!(d.action, Action::Claim(s.edge(0, 2)));
        assert_eq!(d.branch, KILL_THREAT);
    }

    #[test]
    fn forfeits_when_threats_exceed_turn() {
        let mut s = connected(6, 1);
        s.apply_claim(Side::Builder, s.edge(0, 1)).unwrap();
        s.apply_claim(Side::Builder, s.edge(1, 2)).unwrap();
        s.apply_claim(Side::Builder, s.edge(1, 3)).unwrap();
        // 0, 2, 3 share a part: three threats against one claim.
        assert_eq!(breaker_connected_move(&s, 1, 1).branch, FORFEIT);
        assert_eq!(breaker_connected_move(&s, 1, 3).branch, KILL_THREAT);
    }

    #[test]
    fn fresh_position_feeds_part_one_at_lowest_edge() {
        let mut s = connected(6, 1);
        s.apply_claim(Side::Builder, s.edge(0, 1)).unwrap();
        let d = breaker_connected_move(&s, 1, 1);
        assert_eq!(d.action, Action::Claim(s.edge(0, 2)));
        assert_eq!(d.branch, BALANCE_LIGHTER);
    }

    #[test]
    fn prefers_vertex_with_fewest_edges_to_lighter_part() {
        let mut s = connected(6, 3);
        s.apply_claim(Side::Builder, s.edge(0, 1)).unwrap();
        s.apply_claim(Side::Blocker, s.edge(0, 2)).unwrap();
        // V¹ = {0} still lighter? e(V¹,R) = 1, e(V²,R) = 0, so V² is lighter.
        let d = breaker_connected_move(&s, 2, 2);
        assert_eq!(d.branch, BALANCE_LIGHTER);
        // Every R vertex has degree 0 into V²; vertex 2 has the largest
        // surplus toward V¹, so its edge to 1 wins the tie.
        assert_eq!(d.action, Action::Claim(s.edge(1, 2)));
    }

    #[test]
    fn saturates_small_r() {
        let mut s = connected(4, 3);
        s.apply_claim(Side::Builder, s.edge(0, 1)).unwrap();
        // R = {2, 3}, |R| <= b; two open edges per part, budget b - k + 1 = 3.
        let d = breaker_connected_move(&s, 1, 3);
        assert_eq!(d.branch, SATURATE);
        assert_eq!(d.action, Action::Claim(s.edge(0, 2)));
    }
}

//! Client's strategy for the connected Client-Waiter game, and the
//! criticality bookkeeping it relies on.

use crate::board::{EdgeId, GameState, Part, Side, Turn, Vertex};
use crate::engine::{Action, Decision, Strategy, StrategyError};

pub const CLOSE_ODD: &str = "client-connected/close-odd";
pub const FORCE_THREAT: &str = "client-connected/force-threat";
pub const NONCRITICAL: &str = "client-connected/noncritical";
pub const ANY_FRESH: &str = "client-connected/any-fresh";
pub const FORFEIT: &str = "client-connected/forfeit";

/// An untouched vertex is critical to a part when Waiter owns every edge
/// between them; a part is critical when some vertex is critical to it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalReport {
    /// (v, critical to V¹, critical to V²) for each v in R.
    pub vertices: Vec<(Vertex, bool, bool)>,
    pub parts: [bool; 2],
}

impl CriticalReport {
    pub fn critical_vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.vertices
            .iter()
            .filter(|(_, a, b)| *a || *b)
            .map(|(v, _, _)| *v)
    }

    pub fn part_is_critical(&self, p: Part) -> bool {
        self.parts[p.index()]
    }
}

/// Criticality per vertex of R. An empty part has no critical vertices.
pub fn compute_critical(state: &GameState) -> CriticalReport {
    let mut parts = [false; 2];
    let mut vertices = Vec::new();
    for v in state.untouched().iter() {
        let mut flags = [false; 2];
        for p in Part::BOTH {
            let set = state.part_set(p);
            flags[p.index()] = !set.is_empty() && state.blocker_deg_into(v, set) == set.len();
            parts[p.index()] |= flags[p.index()];
        }
        vertices.push((v, flags[0], flags[1]));
    }
    CriticalReport { vertices, parts }
}

/// Whether some unclaimed edge would sit inside a part once Client takes `e`
/// and Waiter takes the rest of `offer`.
pub fn leaves_threat_after(state: &GameState, offer: &[EdgeId], e: EdgeId) -> bool {
    let surviving = state.odd_closers().iter().any(|c| !offer.contains(c));
    if surviving {
        return true;
    }
    let (u, v) = state.endpoints(e);
    match (state.part_of(u), state.part_of(v)) {
        // A fresh edge or one inside the graph adds no same-part pair.
        (None, None) => false,
        (Some(_), Some(_)) if state.forest().same_component(u, v) => false,
        (Some(px), None) | (None, Some(px)) => {
            let (x, y) = if state.part_of(u).is_some() { (u, v) } else { (v, u) };
            let mut open = state.unclaimed_adj(y);
            open.intersect_with(state.part_set(px.other()));
            open.iter().any(|z| {
                let yz = state.edge(y, z);
                !offer.contains(&yz) && state.forest().same_component(z, x)
            })
        }
        (Some(_), Some(_)) => {
            let mut after = state.clone();
            for &x in offer.iter().filter(|&&x| x != e) {
                after
                    .apply_claim(Side::Blocker, x)
                    .expect("offered edges are unclaimed");
            }
            after
                .apply_claim(Side::Builder, e)
                .expect("offered edges are unclaimed");
            !after.odd_closers().is_empty()
        }
    }
}

fn touches_r(state: &GameState, e: EdgeId) -> bool {
    let (u, v) = state.endpoints(e);
    state.part_of(u).is_none() || state.part_of(v).is_none()
}

pub fn client_connected_move(state: &GameState, offer: &[EdgeId]) -> Result<Decision, StrategyError> {
    if offer.is_empty() {
        return Err(StrategyError("empty offer".into()));
    }
    let mut sorted = offer.to_vec();
    sorted.sort_unstable();

    if let Some(&e) = sorted.iter().find(|e| state.odd_closers().contains(e)) {
        return Ok(Decision::new(Action::Choose(e), CLOSE_ODD));
    }

    let forcing: Vec<EdgeId> = sorted
        .iter()
        .copied()
        .filter(|&e| leaves_threat_after(state, offer, e))
        .collect();
    let pick = forcing
        .iter()
        .find(|&&e| touches_r(state, e))
        .or(forcing.first());
    if let Some(&e) = pick {
        return Ok(Decision::new(Action::Choose(e), FORCE_THREAT));
    }

    let report = compute_critical(state);
    let noncritical = sorted.iter().copied().find(|&e| {
        let (u, v) = state.endpoints(e);
        let into_part = |x: Vertex| {
            state
                .part_of(x)
                .is_some_and(|p| !report.part_is_critical(p))
        };
        touches_r(state, e) && (into_part(u) || into_part(v))
    });
    if let Some(e) = noncritical {
        return Ok(Decision::new(Action::Choose(e), NONCRITICAL));
    }

    if let Some(&e) = sorted.iter().find(|&&e| touches_r(state, e)) {
        return Ok(Decision::new(Action::Choose(e), ANY_FRESH));
    }
    Ok(Decision::new(
        Action::Forfeit("every offered edge closes an even cycle".into()),
        FORFEIT,
    ))
}

#[derive(Clone, Debug, Default)]
pub struct ClientConnected;

impl Strategy for ClientConnected {
    fn name(&self) -> &str {
        "client-connected"
    }

    fn decide(&mut self, state: &GameState) -> Result<Decision, StrategyError> {
        match &state.turn {
            Turn::ClientChoose { offer } => client_connected_move(state, offer),
            _ => Err(StrategyError(
                "client-connected asked to move out of turn".into(),
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
    use crate::board::{GameConfig, Rules};

    fn cw(n: usize, b: usize) -> GameState {
        GameState::new(GameConfig::client_waiter(n, b, Rules::Connected).unwrap())
    }

    #[test]
    fn takes_odd_closer() {
        let mut s = cw(5, 1);
        s.apply_claim(Side::Builder, s.edge(0, 1)).unwrap();
        s.apply_claim(Side::Builder, s.edge(1, 2)).unwrap();
        let d = client_connected_move(&s, &[s.edge(0, 3), s.edge(0, 2)]).unwrap();
        assert_eq!(d.action, Action::Choose(s.edge(0, 2)));
        assert_eq!(d.branch, CLOSE_ODD);
    }

    #[test]
    fn edge_to_fresh_vertex_forces_threat() {
        let mut s = cw(5, 1);
        s.apply_claim(Side::Builder, s.edge(0, 1)).unwrap();
        let d = client_connected_move(&s, &[s.edge(0, 3), s.edge(0, 2)]).unwrap();
        assert_eq!(d.branch, FORCE_THREAT);
        assert_eq!(d.action, Action::Choose(s.edge(0, 2)));
    }

    #[test]
    fn waiter_share_of_offer_cancels_threat() {
        let mut s = cw(5, 1);
        s.apply_claim(Side::Builder, s.edge(0, 1)).unwrap();
        // Taking either edge hands the other, the only new same-part pair,
        // to Waiter.
        let d = client_connected_move(&s, &[s.edge(0, 2), s.edge(1, 2)]).unwrap();
        assert_ne!(d.branch, FORCE_THREAT);
    }

    #[test]
    fn critical_report() {
        let mut s = cw(5, 2);
        assert!(compute_critical(&s).critical_vertices().next().is_none());
        s.apply_claim(Side::Builder, s.edge(0, 1)).unwrap();
        s.apply_claim(Side::Blocker, s.edge(0, 3)).unwrap();
        let r = compute_critical(&s);
        assert_eq!(r.critical_vertices().collect::<Vec<_>>(), vec![3]);
        assert!(r.part_is_critical(Part::One));
        assert!(!r.part_is_critical(Part::Two));
    }

    #[test]
    fn avoids_critical_part() {
        let mut s = cw(6, 2);
        s.apply_claim(Side::Builder, s.edge(0, 1)).unwrap();
        s.apply_claim(Side::Blocker, s.edge(0, 5)).unwrap();
        // V¹ = {0} is critical via 5; prefer the edge into V².
        let d = client_connected_move(&s, &[s.edge(0, 2), s.edge(1, 2)]).unwrap();
        assert_eq!(d.branch, NONCRITICAL);
        assert_eq!(d.action, Action::Choose(s.edge(1, 2)));
    }

    #[test]
    fn forfeits_on_even_cycle_only_offer() {
        let mut s = cw(6, 1);
        for (u, v) in [(0, 1), (1, 2), (2, 3)] {
            s.apply_claim(Side::Builder, s.edge(u, v)).unwrap();
        }
        for e in s.odd_closers().clone() {
            s.apply_claim(Side::Blocker, e).unwrap();
        }
        let d = client_connected_move(&s, &[s.edge(0, 3)]).unwrap();
        assert_eq!(d.branch, FORFEIT);
    }
}

//! Simple opponents: uniformly random legal play and one-step greedy play.

use rand::seq::{IteratorRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::board::{EdgeId, GameState, Part, Rules, Turn, Vertex};
use crate::engine::{Action, Decision, Strategy, StrategyError};

fn out_of_turn(name: &str) -> StrategyError {
    StrategyError(format!("{name} asked to move out of turn"))
}

/// Edges Waiter may offer next round, sorted.
pub fn offerable_edges(state: &GameState) -> Vec<EdgeId> {
    if state.config().rules == Rules::Connected && state.builder_edge_count() > 0 {
        state.edges_touching_builder()
    } else {
        state.unclaimed_edges()
    }
}

#[derive(Clone, Debug)]
pub struct RandomPlayer {
    name: &'static str,
    rng: ChaCha8Rng,
}

impl RandomPlayer {
    pub fn maker(seed: u64) -> Self {
        Self::named("random-maker", seed)
    }

    pub fn breaker(seed: u64) -> Self {
        Self::named("random-breaker", seed)
    }

    pub fn waiter(seed: u64) -> Self {
        Self::named("random-waiter", seed)
    }

    pub fn client(seed: u64) -> Self {
        Self::named("random-client", seed)
    }

    fn named(name: &'static str, seed: u64) -> Self {
        Self {
            name,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    fn random_offer(&mut self, state: &GameState) -> Vec<EdgeId> {
        let max = state.b() + 1;
        if state.config().rules == Rules::Connected && state.builder_edge_count() == 0 {
            let centre = self.rng.gen_range(0..state.n());
            let mut star: Vec<EdgeId> = state
                .unclaimed_adj(centre)
                .iter()
                .map(|v| state.edge(centre, v))
                .collect();
            star.shuffle(&mut self.rng);
            star.truncate(max);
            return star;
        }
        let pool = offerable_edges(state);
        pool.choose_multiple(&mut self.rng, max.min(pool.len()))
            .copied()
            .collect()
    }
}

impl Strategy for RandomPlayer {
    fn name(&self) -> &str {
        self.name
    }

    fn decide(&mut self, state: &GameState) -> Result<Decision, StrategyError> {
        let action = match &state.turn {
            Turn::BuilderClaim => {
                let free = state.config().rules == Rules::Free || state.builder_edge_count() == 0;
                let pick = if free {
                    state.unclaimed_pool().choose(&mut self.rng).copied()
                } else {
                    state.legal_builder_moves().into_iter().choose(&mut self.rng)
                };
                pick.map(Action::Claim)
            }
            Turn::BlockerClaim { .. } => state
                .unclaimed_pool()
                .choose(&mut self.rng)
                .copied()
                .map(Action::Claim),
            Turn::WaiterOffer => Some(Action::Offer(self.random_offer(state))),
            Turn::ClientChoose { offer } => offer.choose(&mut self.rng).copied().map(Action::Choose),
        };
        let action = action.ok_or_else(|| out_of_turn(self.name))?;
        Ok(Decision::new(action, "random"))
    }

    fn clone_box(&self) -> Box<dyn Strategy> {
        Box::new(self.clone())
    }

    fn memo_key(&self) -> Vec<u8> {
        self.rng.get_word_pos().to_le_bytes().to_vec()
    }
}

/// Lowest-id unclaimed edge from `v` to `targets`.
fn lowest_open_edge(state: &GameState, v: Vertex, targets: &crate::VertexSet) -> Option<EdgeId> {
    let mut open = state.unclaimed_adj(v);
    open.intersect_with(targets);
    open.first().map(|x| state.edge(v, x))
}

/// Closes an odd cycle if it can, otherwise adds the fresh vertex that opens
/// the most new threats.
#[derive(Clone, Debug, Default)]
pub struct GreedyMaker;

impl Strategy for GreedyMaker {
    fn name(&self) -> &str {
        "greedy-maker"
    }

    fn decide(&mut self, state: &GameState) -> Result<Decision, StrategyError> {
        if state.turn != Turn::BuilderClaim {
            return Err(out_of_turn(self.name()));
        }
        if let Some(&e) = state.odd_closers().iter().next() {
            return Ok(Decision::new(Action::Claim(e), "greedy-maker/close-odd"));
        }
        let r = state.untouched();
        let mut best: Option<(std::cmp::Reverse<usize>, EdgeId)> = None;
        for x in state.touched().iter() {
            let px = state.part_of(x).expect("touched");
            let mut open = state.unclaimed_adj(x);
            open.intersect_with(r);
            for y in open.iter() {
                let mut threats = state.unclaimed_adj(y);
                threats.intersect_with(state.part_set(px.other()));
                let key = (std::cmp::Reverse(threats.len()), state.edge(x, y));
                if best.is_none_or(|b| key < b) {
                    best = Some(key);
                }
            }
        }
        if let Some((_, e)) = best {
            return Ok(Decision::new(Action::Claim(e), "greedy-maker/extend"));
        }
        match state.legal_builder_moves().first() {
            Some(&e) => Ok(Decision::new(Action::Claim(e), "greedy-maker/any")),
            None => Ok(Decision::new(
                Action::Forfeit("no legal move".into()),
                "greedy-maker/forfeit",
            )),
        }
    }

    fn clone_box(&self) -> Box<dyn Strategy> {
        Box::new(self.clone())
    }
}

/// Blocks threats, then cuts the busiest builder vertex off from R.
#[derive(Clone, Debug, Default)]
pub struct GreedyBreaker;

impl Strategy for GreedyBreaker {
    fn name(&self) -> &str {
        "greedy-breaker"
    }

    fn decide(&mut self, state: &GameState) -> Result<Decision, StrategyError> {
        if !matches!(state.turn, Turn::BlockerClaim { .. }) {
            return Err(out_of_turn(self.name()));
        }
        if let Some(&e) = state.odd_closers().iter().next() {
            return Ok(Decision::new(Action::Claim(e), "greedy-breaker/block"));
        }
        let r = state.untouched();
        let mut best: Option<(std::cmp::Reverse<usize>, EdgeId)> = None;
        for x in state.touched().iter() {
            if let Some(e) = lowest_open_edge(state, x, r) {
                let key = (std::cmp::Reverse(state.builder_adj(x).len()), e);
                if best.is_none_or(|b| key < b) {
                    best = Some(key);
                }
            }
        }
        if let Some((_, e)) = best {
            return Ok(Decision::new(Action::Claim(e), "greedy-breaker/cut"));
        }
        let e = *state
            .unclaimed_edges()
            .first()
            .ok_or_else(|| out_of_turn(self.name()))?;
        Ok(Decision::new(Action::Claim(e), "greedy-breaker/any"))
    }

    fn clone_box(&self) -> Box<dyn Strategy> {
        Box::new(self.clone())
    }
}

/// Offers stars from one untouched vertex into the larger part, so Client
/// never gets a same-part edge while other offers exist.
#[derive(Clone, Debug, Default)]
pub struct GreedyWaiter;

impl GreedyWaiter {
    fn offer(state: &GameState) -> Vec<EdgeId> {
        let max = state.b() + 1;
        if state.builder_edge_count() == 0 {
            let star: Vec<EdgeId> = state
                .unclaimed_adj(0)
                .iter()
                .take(max)
                .map(|v| state.edge(0, v))
                .collect();
            if !star.is_empty() {
                return star;
            }
        }
        let (big, small) = {
            let one = state.part_set(Part::One).len();
            let two = state.part_set(Part::Two).len();
            if one >= two {
                (Part::One, Part::Two)
            } else {
                (Part::Two, Part::One)
            }
        };
        for target in [big, small] {
            let set = state.part_set(target);
            for y in state.untouched().iter() {
                let mut open = state.unclaimed_adj(y);
                open.intersect_with(set);
                if !open.is_empty() {
                    return open.iter().take(max).map(|x| state.edge(y, x)).collect();
                }
            }
        }
        let offerable = offerable_edges(state);
        let cross: Vec<EdgeId> = offerable
            .iter()
            .copied()
            .filter(|e| !state.odd_closers().contains(e))
            .take(max)
            .collect();
        if !cross.is_empty() {
            return cross;
        }
        offerable.into_iter().take(max).collect()
    }
}

impl Strategy for GreedyWaiter {
    fn name(&self) -> &str {
        "greedy-waiter"
    }

    fn decide(&mut self, state: &GameState) -> Result<Decision, StrategyError> {
        if state.turn != Turn::WaiterOffer {
            return Err(out_of_turn(self.name()));
        }
        Ok(Decision::new(Action::Offer(Self::offer(state)), "greedy-waiter/star"))
    }

    fn clone_box(&self) -> Box<dyn Strategy> {
        Box::new(self.clone())
    }
}

/// Takes the lowest offered edge, or an odd closer when one is offered.
#[derive(Clone, Debug, Default)]
pub struct GreedyClient;

impl Strategy for GreedyClient {
    fn name(&self) -> &str {
        "greedy-client"
    }

    fn decide(&mut self, state: &GameState) -> Result<Decision, StrategyError> {
        let Turn::ClientChoose { offer } = &state.turn else {
            return Err(out_of_turn(self.name()));
        };
        let e = offer
            .iter()
            .copied()
            .find(|e| state.odd_closers().contains(e))
            .or_else(|| offer.iter().copied().min())
            .ok_or_else(|| out_of_turn(self.name()))?;
        Ok(Decision::new(Action::Choose(e), "greedy-client/take"))
    }

    fn clone_box(&self) -> Box<dyn Strategy> {
        Box::new(self.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::board::{GameConfig, Side};
    use crate::engine::{run_game, Hooks};

    #[test]
    fn random_breaker_is_reproducible() {
        let cfg = GameConfig::maker_breaker(12, 2, Rules::Free).unwrap();
        let digest = |seed| {
            let mut maker = RandomPlayer::maker(seed);
            let mut breaker = RandomPlayer::breaker(seed + 1);
            run_game(cfg, &mut maker, &mut breaker, &mut Hooks::observe())
                .unwrap()
                .digest
        };
        assert_eq!(digest(7), digest(7));
        assert_ne!(digest(7), digest(8));
    }

    #[test]
    fn greedy_breaker_blocks_single_threat() {
        let mut s = GameState::new(GameConfig::maker_breaker(6, 1, Rules::Free).unwrap());
        s.apply_claim(Side::Builder, s.edge(0, 1)).unwrap();
        s.apply_claim(Side::Builder, s.edge(1, 2)).unwrap();
        s.turn = Turn::BlockerClaim { left: 1 };
        let d = GreedyBreaker.decide(&s).unwrap();
        assert_eq!(d.action, Action::Claim(s.edge(0, 2)));
    }

    #[test]
    fn greedy_waiter_opens_with_star() {
        let s = GameState::new(GameConfig::client_waiter(7, 3, Rules::Connected).unwrap());
        let d = GreedyWaiter.decide(&s).unwrap();
        let expect: Vec<EdgeId> = (1..=4).map(|v| s.edge(0, v)).collect();
        assert_eq!(d.action, Action::Offer(expect));
        let s = GameState::new(GameConfig::client_waiter(4, 9, Rules::Connected).unwrap());
        let Action::Offer(star) = GreedyWaiter.decide(&s).unwrap().action else {
            panic!("expected an offer");
        };
        assert_eq!(star.len(), 3);
    }
}

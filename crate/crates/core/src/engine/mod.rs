//! Referee for both game variants.
//!
//! Every half-move goes through [`step`], which checks legality, applies the
//! action, advances the turn and settles terminal conditions. The run loops,
//! replay and the exhaustive verifier all share it.

mod hooks;
mod metrics;
mod offer;
mod transcript;

pub use hooks::{HookMode, Hooks, InvariantHook, Violation};
pub use metrics::MetricsSnapshot;
pub use offer::{validate_offer, OfferClause, OfferViolation};
pub use transcript::{replay, Transcript, TRANSCRIPT_VERSION};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::board::{
    BoardError, EdgeId, EndReason, GameConfig, GameState, Rules, Side, Turn, Variant, Winner,
};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Action {
    Claim(EdgeId),
    Offer(Vec<EdgeId>),
    Choose(EdgeId),
    Forfeit(String),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Maker,
    Breaker,
    Waiter,
    Client,
}

impl Role {
    pub fn side(self) -> Side {
        match self {
            Role::Maker | Role::Client => Side::Builder,
            Role::Breaker | Role::Waiter => Side::Blocker,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Move {
    pub s: usize,
    pub k: usize,
    pub role: Role,
    pub action: Action,
    pub branch: String,
}

/// A strategy's answer: the action and the branch of the strategy that chose it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decision {
    pub action: Action,
    pub branch: &'static str,
}

impl Decision {
    pub fn new(action: Action, branch: &'static str) -> Self {
        Self { action, branch }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("strategy error: {0}")]
pub struct StrategyError(pub String);

/// A player. Deterministic given its construction (including any seed).
pub trait Strategy: Send {
    fn name(&self) -> &str;

    /// Chooses an action for the player whose turn it is in `state`.
    fn decide(&mut self, state: &GameState) -> Result<Decision, StrategyError>;

    fn clone_box(&self) -> Box<dyn Strategy>;

    /// Bytes identifying the strategy's internal state, for memoization
    /// during exhaustive search. Stateless strategies return nothing.
    fn memo_key(&self) -> Vec<u8> {
        Vec::new()
    }
}

impl Clone for Box<dyn Strategy> {
    fn clone(&self) -> Self {
        self.clone_box()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("round {s}, move {k}: {role:?} made an illegal move: {detail}")]
    RuleViolation {
        s: usize,
        k: usize,
        role: Role,
        detail: String,
    },
    #[error("round {s}, move {k}: invariant {hook} failed: {message} (state {digest})")]
    InvariantViolation {
        s: usize,
        k: usize,
        hook: String,
        message: String,
        digest: String,
    },
    #[error("{role:?} strategy failed: {source}")]
    Strategy { role: Role, source: StrategyError },
    #[error("transcript is corrupt: {0}")]
    Corruption(String),
    #[error("configuration: {0}")]
    Config(#[from] BoardError),
    #[error("{0}")]
    WrongVariant(String),
}

/// The role expected to act next, or `None` once the game is over.
pub fn role_to_move(state: &GameState) -> Option<Role> {
    if state.is_over() {
        return None;
    }
    Some(match state.turn {
        Turn::BuilderClaim => Role::Maker,
        Turn::BlockerClaim { .. } => Role::Breaker,
        Turn::WaiterOffer => Role::Waiter,
        Turn::ClientChoose { .. } => Role::Client,
    })
}

/// Round and within-turn index the next move will carry.
pub fn next_position(state: &GameState) -> (usize, usize) {
    match state.turn {
        Turn::BuilderClaim | Turn::WaiterOffer => (state.round + 1, 0),
        Turn::BlockerClaim { .. } => (state.round, state.k + 1),
        Turn::ClientChoose { .. } => (state.round, 1),
    }
}

/// Applies one action for the player to move and returns the recorded move.
pub fn step(state: &mut GameState, action: Action, branch: &str) -> Result<Move, EngineError> {
    let role = role_to_move(state).ok_or_else(|| EngineError::RuleViolation {
        s: state.round,
        k: state.k,
        role: Role::Maker,
        detail: "game is already over".into(),
    })?;
    let (s, k) = next_position(state);
    let illegal = |detail: String| EngineError::RuleViolation { s, k, role, detail };

    match (&state.turn, &action) {
        (_, Action::Forfeit(_)) => {
            state.round = s;
            state.k = k;
            match role.side() {
                Side::Builder => state.finish(Winner::Blocker, EndReason::BuilderForfeit),
                Side::Blocker => state.finish(Winner::Builder, EndReason::BlockerForfeit),
            }
        }
        (Turn::BuilderClaim, Action::Claim(e)) => {
            state
                .apply_claim(Side::Builder, *e)
                .map_err(|err| illegal(err.to_string()))?;
            state.round = s;
            state.k = 0;
            if !state.is_over() {
                let left = state.b().min(state.unclaimed_count());
                state.turn = Turn::BlockerClaim { left };
                settle(state);
            }
        }
        (Turn::BlockerClaim { left }, Action::Claim(e)) => {
            let left = *left;
            state
                .apply_claim(Side::Blocker, *e)
                .map_err(|err| illegal(err.to_string()))?;
            state.k = k;
            state.turn = if left > 1 {
                Turn::BlockerClaim { left: left - 1 }
            } else {
                Turn::BuilderClaim
            };
            settle(state);
        }
        (Turn::WaiterOffer, Action::Offer(offer)) => {
            validate_offer(state, offer).map_err(|v| illegal(v.to_string()))?;
            state.round = s;
            state.k = 0;
            state.turn = Turn::ClientChoose {
                offer: offer.clone(),
            };
        }
        (Turn::ClientChoose { offer }, Action::Choose(e)) => {
            if !offer.contains(e) {
                return Err(illegal(format!("{e} was not offered")));
            }
            let rest: Vec<EdgeId> = offer.iter().copied().filter(|x| x != e).collect();
            // Waiter's share first: blocker claims never end the game, so the
            // final ownership is the same as claiming in the other order.
            for x in rest {
                state
                    .apply_claim(Side::Blocker, x)
                    .map_err(|err| illegal(err.to_string()))?;
            }
            state
                .apply_claim(Side::Builder, *e)
                .map_err(|err| illegal(err.to_string()))?;
            state.k = 1;
            state.turn = Turn::WaiterOffer;
            if !state.is_over() {
                settle(state);
            }
        }
        (turn, action) => {
            return Err(illegal(format!(
                "action {action:?} does not fit the current turn {turn:?}"
            )));
        }
    }

    Ok(Move {
        s,
        k,
        role,
        action,
        branch: branch.to_string(),
    })
}

/// Ends the game if nothing legal remains for the side about to move.
fn settle(state: &mut GameState) {
    if state.is_over() {
        return;
    }
    if state.unclaimed_count() == 0 {
        state.finish(Winner::Blocker, EndReason::BoardExhausted);
        return;
    }
    let connected = state.config().rules == Rules::Connected;
    match state.turn {
        Turn::BuilderClaim if connected && state.legal_builder_moves().is_empty() => {
            state.finish(Winner::Blocker, EndReason::NoLegalBuilderMove);
        }
        Turn::WaiterOffer
            if connected
                && state.builder_edge_count() > 0
                && !state.has_edge_touching_builder() =>
        {
            state.finish(Winner::Builder, EndReason::NoOfferableEdges);
        }
        _ => {}
    }
}

/// Plays a game to the end from `state`, appending to `moves`.
pub fn play_from(
    state: &mut GameState,
    moves: &mut Vec<Move>,
    builder: &mut dyn Strategy,
    blocker: &mut dyn Strategy,
    hooks: &mut Hooks,
) -> Result<(), EngineError> {
    while let Some(role) = role_to_move(state) {
        let player: &mut dyn Strategy = match role.side() {
            Side::Builder => &mut *builder,
            Side::Blocker => &mut *blocker,
        };
        let decision = player
            .decide(state)
            .map_err(|source| EngineError::Strategy { role, source })?;
        let mv = step(state, decision.action, decision.branch)?;
        hooks.run(state, &mv)?;
        moves.push(mv);
    }
    Ok(())
}

/// Runs a full game of either variant and returns its transcript.
pub fn run_game(
    config: GameConfig,
    builder: &mut dyn Strategy,
    blocker: &mut dyn Strategy,
    hooks: &mut Hooks,
) -> Result<Transcript, EngineError> {
    config.validate()?;
    let mut state = GameState::new(config);
    let mut moves = Vec::new();
    play_from(&mut state, &mut moves, builder, blocker, hooks)?;
    Ok(Transcript::from_game(&state, moves))
}

pub fn run_maker_breaker(
    config: GameConfig,
    maker: &mut dyn Strategy,
    breaker: &mut dyn Strategy,
    hooks: &mut Hooks,
) -> Result<Transcript, EngineError> {
    if config.variant != Variant::MakerBreaker {
        return Err(EngineError::WrongVariant(
            "run_maker_breaker needs a maker-breaker config".into(),
        ));
    }
    run_game(config, maker, breaker, hooks)
}

pub fn run_client_waiter(
    config: GameConfig,
    waiter: &mut dyn Strategy,
    client: &mut dyn Strategy,
    hooks: &mut Hooks,
) -> Result<Transcript, EngineError> {
    if config.variant != Variant::ClientWaiter {
        return Err(EngineError::WrongVariant(
            "run_client_waiter needs a client-waiter config".into(),
        ));
    }
    run_game(config, client, waiter, hooks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::board::{GameResult, Rules};

    struct Script(Vec<Action>);

    impl Strategy for Script {
        fn name(&self) -> &str {
            "script"
        }
        fn decide(&mut self, _: &GameState) -> Result<Decision, StrategyError> {
            Ok(Decision::new(self.0.remove(0), "script"))
        }
        fn clone_box(&self) -> Box<dyn Strategy> {
            Box::new(Script(self.0.clone()))
        }
    }

    #[test]
    fn breaker_takes_whole_board_when_bias_is_large() {
        let cfg = GameConfig::maker_breaker(4, 10, Rules::Free).unwrap();
        let mut maker = Script(vec![Action::Claim(EdgeId(0))]);
        let mut breaker = Script((1..6).map(|i| Action::Claim(EdgeId(i))).collect());
        let t = run_maker_breaker(cfg, &mut maker, &mut breaker, &mut Hooks::observe()).unwrap();
        assert_eq!(t.moves.len(), 6);
        assert_eq!(t.moves.last().unwrap().k, 5);
        assert_eq!(
            t.result,
            Some(GameResult {
                winner: Winner::Blocker,
                reason: EndReason::BoardExhausted
            })
        );
    }

    #[test]
    fn illegal_claim_is_reported_with_position() {
        let cfg = GameConfig::maker_breaker(4, 1, Rules::Free).unwrap();
        let mut maker = Script(vec![Action::Claim(EdgeId(0))]);
        let mut breaker = Script(vec![Action::Claim(EdgeId(0))]);
        let err = run_maker_breaker(cfg, &mut maker, &mut breaker, &mut Hooks::observe())
            .unwrap_err();
        assert!(matches!(
            err,
            EngineError::RuleViolation {
                s: 1,
                k: 1,
                role: Role::Breaker,
                ..
            }
        ));
    }

    #[test]
    fn client_with_zero_bias_takes_triangle() {
        let cfg = GameConfig::client_waiter(3, 0, Rules::Free).unwrap();
        let mut waiter = Script((0..3).map(|i| Action::Offer(vec![EdgeId(i)])).collect());
        let mut client = Script((0..3).map(|i| Action::Choose(EdgeId(i))).collect());
        let t = run_client_waiter(cfg, &mut waiter, &mut client, &mut Hooks::observe()).unwrap();
        assert_eq!(t.result.unwrap().winner, Winner::Builder);
        assert_eq!(t.result.unwrap().reason, EndReason::OddCycleClosed);
    }

    #[test]
    fn choose_outside_offer_is_rejected() {
        let cfg = GameConfig::client_waiter(4, 1, Rules::Free).unwrap();
        let mut state = GameState::new(cfg);
        step(&mut state, Action::Offer(vec![EdgeId(0), EdgeId(1)]), "").unwrap();
        assert!(step(&mut state, Action::Choose(EdgeId(2)), "").is_err());
        let mv = step(&mut state, Action::Choose(EdgeId(1)), "").unwrap();
        assert_eq!((mv.s, mv.k), (1, 1));
        assert_eq!(state.blocker_edge_count(), 1);
    }
}

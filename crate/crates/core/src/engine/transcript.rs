use serde::{Deserialize, Serialize};

use super::{next_position, role_to_move, step, EngineError, Move};
use crate::board::{GameConfig, GameResult, GameState};

pub const TRANSCRIPT_VERSION: u32 = 1;

/// Replayable record of one game.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transcript {
    pub version: u32,
    pub config: GameConfig,
    pub moves: Vec<Move>,
    pub result: Option<GameResult>,
    pub digest: String,
}

impl Transcript {
    pub fn from_game(state: &GameState, moves: Vec<Move>) -> Self {
        Self {
            version: TRANSCRIPT_VERSION,
            config: *state.config(),
            moves,
            result: state.result(),
            digest: state.digest(),
        }
    }

    /// Number of rounds started during the game.
    pub fn rounds(&self) -> usize {
        self.moves.last().map_or(0, |m| m.s)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("transcript serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

/// Rebuilds the final position from a transcript, checking every move, the
/// recorded result and the digest.
pub fn replay(t: &Transcript) -> Result<GameState, EngineError> {
    let corrupt = EngineError::Corruption;
    if t.version != TRANSCRIPT_VERSION {
        return Err(corrupt(format!("unsupported version {}", t.version)));
    }
    t.config
        .validate()
        .map_err(|e| corrupt(format!("bad config: {e}")))?;
    let mut state = GameState::new(t.config);
    for (i, mv) in t.moves.iter().enumerate() {
        let expected_role = role_to_move(&state);
        if expected_role != Some(mv.role) {
            return Err(corrupt(format!(
                "move {i}: expected {expected_role:?} to move, found {:?}",
                mv.role
            )));
        }
        if next_position(&state) != (mv.s, mv.k) {
            return Err(corrupt(format!(
                "move {i}: position ({}, {}) out of sequence",
                mv.s, mv.k
            )));
        }
        step(&mut state, mv.action.clone(), &mv.branch)
            .map_err(|e| corrupt(format!("move {i}: {e}")))?;
    }
    if state.result() != t.result {
        return Err(corrupt(format!(
            "recorded result {:?} but replay gives {:?}",
            t.result,
            state.result()
        )));
    }
    let digest = state.digest();
    if digest != t.digest {
        return Err(corrupt(format!(
            "digest mismatch: recorded {}, replayed {digest}",
            t.digest
        )));
    }
    Ok(state)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::board::{EdgeId, Rules};
    use crate::engine::Action;

    fn played() -> Transcript {
        let cfg = GameConfig::maker_breaker(4, 1, Rules::Free).unwrap();
        let mut state = GameState::new(cfg);
        let mut moves = Vec::new();
        for e in [0, 1, 3, 2, 5] {
            let action = Action::Claim(EdgeId(e));
            moves.push(step(&mut state, action, "test").unwrap());
        }
        Transcript::from_game(&state, moves)
    }

    #[test]
    fn replay_reproduces_digest() {
        let t = played();
        let back = Transcript::from_json(&t.to_json()).unwrap();
        assert_eq!(back, t);
        assert_eq!(replay(&back).unwrap().digest(), t.digest);
    }

    #[test]
    fn deleted_move_is_corruption() {
        let mut t = played();
        t.moves.remove(3);
        assert!(matches!(replay(&t), Err(EngineError::Corruption(_))));
    }

    #[test]
    fn empty_transcript_is_initial_state() {
        let cfg = GameConfig::maker_breaker(5, 2, Rules::Connected).unwrap();
        let fresh = GameState::new(cfg);
        let t = Transcript::from_game(&fresh, Vec::new());
        let state = replay(&t).unwrap();
        assert_eq!(state.unclaimed_count(), 10);
        assert_eq!(state.result(), None);
    }
}

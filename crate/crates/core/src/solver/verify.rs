//! Exhaustive verification of a fixed strategy: the opponent tries every
//! legal move, the strategy answers through the real engine.

use std::collections::HashMap;

use super::{Position, Solver, SolverError, SolverOptions, MAX_SOLVER_N};
use crate::board::{EdgeId, GameConfig, GameState, Part, Side, Turn};
use crate::engine::{
    role_to_move, step, Action, Hooks, InvariantHook, Move, Role, Strategy, Transcript,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub max_nodes: u64,
    /// Keep searching for shorter counterexamples once one is found.
    pub shortest: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            max_nodes: 100_000_000,
            shortest: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    WinsAgainstAll,
    Counterexample { transcript: Transcript, reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationResult {
    pub verdict: Verdict,
    pub nodes: u64,
    pub max_depth: usize,
}

impl VerificationResult {
    pub fn wins_against_all(&self) -> bool {
        self.verdict == Verdict::WinsAgainstAll
    }
}

struct Search<'a> {
    fixed_side: Side,
    tables: Solver,
    hooks: Hooks,
    /// Opponent positions known to be safe for at least this many more moves.
    /// Grouped by the fixed strategy's memo key.
    safe: HashMap<Vec<u8>, HashMap<u128, u32>>,
    nodes: u64,
    max_nodes: u64,
    max_depth: usize,
    moves: Vec<Move>,
    _config: &'a GameConfig,
}

struct Found {
    transcript: Transcript,
    reason: String,
}

impl Search<'_> {
    fn key(state: &GameState) -> u128 {
        let pos = Position::from_state(state).expect("game in progress");
        let (tag, offer) = match pos.phase {
            super::Phase::Maker => (0u128, 0u32),
            super::Phase::Breaker { left } => (left as u128, 0),
            super::Phase::Waiter => (62, 0),
            super::Phase::Client { offer } => (63, offer),
        };
        let mut v1 = 0u128;
        for v in state.part_set(Part::One).iter() {
            v1 |= 1 << v;
        }
        pos.builder as u128
            | (pos.blocker as u128) << 28
            | (offer as u128) << 56
            | tag << 84
            | v1 << 90
    }

    fn opponent_actions(&self, state: &GameState) -> Vec<Action> {
        match &state.turn {
            Turn::BuilderClaim => state
                .legal_builder_moves()
                .into_iter()
                .map(Action::Claim)
                .collect(),
            Turn::BlockerClaim { .. } => state
                .unclaimed_edges()
                .into_iter()
                .map(Action::Claim)
                .collect(),
            Turn::WaiterOffer => {
                let pos = Position::from_state(state).expect("game in progress");
                self.tables
                    .offers(pos.builder, pos.blocker)
                    .into_iter()
                    .map(|mask| {
                        Action::Offer(
                            (0..32)
                                .filter(|i| mask >> i & 1 == 1)
                                .map(EdgeId)
                                .collect(),
                        )
                    })
                    .collect()
            }
            Turn::ClientChoose { offer } => {
                let mut o = offer.clone();
                o.sort_unstable();
                o.into_iter().map(Action::Choose).collect()
            }
        }
    }

    fn tick(&mut self) -> Result<(), SolverError> {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Err(SolverError::NodeCap {
                nodes: self.nodes,
                cap: self.max_nodes,
                max_depth: self.max_depth,
            });
        }
        Ok(())
    }

    fn found(&self, state: &GameState, reason: String) -> Option<Found> {
        Some(Found {
            transcript: Transcript::from_game(state, self.moves.clone()),
            reason,
        })
    }

    /// Applies one action and runs the hooks; failures become findings.
    fn advance(
        &mut self,
        state: &mut GameState,
        action: Action,
        branch: &str,
    ) -> Result<(), String> {
        let mv = step(state, action, branch).map_err(|e| e.to_string())?;
        let checked = self.hooks.run(state, &mv);
        self.moves.push(mv);
        checked.map_err(|e| e.to_string())
    }

    fn dfs(
        &mut self,
        mut state: GameState,
        mut strategy: Box<dyn Strategy>,
        budget: usize,
    ) -> Result<Option<Found>, SolverError> {
        if let Some(result) = state.result() {
            self.tick()?;
            self.max_depth = self.max_depth.max(self.moves.len());
            let won = match self.fixed_side {
                Side::Builder => result.winner == crate::board::Winner::Builder,
                Side::Blocker => result.winner == crate::board::Winner::Blocker,
            };
            return Ok(if won {
                None
            } else {
                self.found(&state, format!("lost: {:?}", result.reason))
            });
        }
        if budget == 0 {
            return Ok(None);
        }
        let key = Self::key(&state);
        let strategy_key = strategy.memo_key();
        let budget32 = budget.min(u32::MAX as usize) as u32;
        let known = self.safe.get(&strategy_key).and_then(|m| m.get(&key));
        if known.is_some_and(|&b| b >= budget32) {
            return Ok(None);
        }
        self.tick()?;
        self.max_depth = self.max_depth.max(self.moves.len());
        let role = role_to_move(&state).expect("game in progress");
        if role.side() == self.fixed_side {
            let decision = match strategy.decide(&state) {
                Ok(d) => d,
                Err(e) => return Ok(self.found(&state, e.to_string())),
            };
            let depth = self.moves.len();
            let res = match self.advance(&mut state, decision.action, decision.branch) {
                Err(reason) => self.found(&state, reason),
                Ok(()) => self.dfs(state, strategy, budget - 1)?,
            };
            self.moves.truncate(depth);
            return Ok(res);
        }

        let depth = self.moves.len();
        for action in self.opponent_actions(&state) {
            let mut next = state.clone();
            let res = match self.advance(&mut next, action, "adversary") {
                Err(reason) => self.found(&next, reason),
                Ok(()) => self.dfs(next, strategy.clone_box(), budget - 1)?,
            };
            self.moves.truncate(depth);
            if res.is_some() {
                return Ok(res);
            }
        }
        self.safe.entry(strategy_key).or_default().insert(key, budget32);
        Ok(None)
    }
}

/// Plays `fixed` in `role` against every opponent line. `hooks` are checked
/// after every move on every line, so they must not carry state between
/// moves.
pub fn verify_strategy(
    config: &GameConfig,
    fixed: &dyn Strategy,
    role: Role,
    hooks: Vec<Box<dyn InvariantHook>>,
    opts: VerifyOptions,
) -> Result<VerificationResult, SolverError> {
    config
        .validate()
        .map_err(|e| SolverError::Config(e.to_string()))?;
    if config.n > MAX_SOLVER_N {
        return Err(SolverError::Capacity {
            what: "verification",
            n: config.n,
            limit: MAX_SOLVER_N,
        });
    }
    let mut assert_hooks = Hooks::assert();
    for h in hooks {
        assert_hooks.push(h);
    }
    let mut search = Search {
        fixed_side: role.side(),
        tables: Solver::unchecked(config, SolverOptions::default()),
        hooks: assert_hooks,
        safe: HashMap::new(),
        nodes: 0,
        max_nodes: opts.max_nodes,
        max_depth: 0,
        moves: Vec::new(),
        _config: config,
    };
    let start = GameState::new(*config);
    let mut best = search.dfs(start.clone(), fixed.clone_box(), usize::MAX)?;
    if opts.shortest {
        while let Some(f) = &best {
            let len = f.transcript.moves.len();
            if len <= 1 {
                break;
            }
            search.safe.clear();
            match search.dfs(start.clone(), fixed.clone_box(), len - 1)? {
                Some(shorter) => best = Some(shorter),
                None => break,
            }
        }
    }
    let verdict = match best {
        None => Verdict::WinsAgainstAll,
        Some(f) => Verdict::Counterexample {
            transcript: f.transcript,
            reason: f.reason,
        },
    };
    Ok(VerificationResult {
        verdict,
        nodes: search.nodes,
        max_depth: search.max_depth,
    })
}

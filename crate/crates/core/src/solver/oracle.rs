//! A player that consults the exact solver: it picks the first move that
//! keeps a won position won, and the first legal move otherwise.

use std::sync::{Arc, Mutex};

use super::{Phase, Position, Solver, SolverOptions};
use crate::board::{EdgeId, GameState, Side};
use crate::engine::{Action, Decision, Role, Strategy, StrategyError};

#[derive(Clone)]
pub struct SolverOracle {
    role: Role,
    opts: SolverOptions,
    solver: Arc<Mutex<Option<Solver>>>,
}

impl SolverOracle {
    pub fn new(role: Role) -> Self {
        Self::with_options(role, SolverOptions::default())
    }

    pub fn with_options(role: Role, opts: SolverOptions) -> Self {
        Self {
            role,
            opts,
            solver: Arc::new(Mutex::new(None)),
        }
    }
}

fn mask_edges(mask: u32) -> Vec<EdgeId> {
    (0..32).filter(|i| mask >> i & 1 == 1).map(EdgeId).collect()
}

impl Strategy for SolverOracle {
    fn name(&self) -> &str {
        "solver-oracle"
    }

    fn decide(&mut self, state: &GameState) -> Result<Decision, StrategyError> {
        let pos = Position::from_state(state)
            .ok_or_else(|| StrategyError("solver-oracle needs a small, unfinished game".into()))?;
        let mut guard = self.solver.lock().expect("solver lock");
        if guard.is_none() {
            let s = Solver::new(state.config(), self.opts).map_err(|e| StrategyError(e.to_string()))?;
            *guard = Some(s);
        }
        let solver = guard.as_mut().expect("initialised");
        let builder_side = self.role.side() == Side::Builder;
        let err = |e: super::SolverError| StrategyError(e.to_string());

        // Candidate actions with the position each leads to.
        let unclaimed = solver.all & !(pos.builder | pos.blocker);
        let mut options: Vec<(Action, Position)> = Vec::new();
        match pos.phase {
            Phase::Maker => {
                let moves = solver.maker_moves(pos.builder, unclaimed);
                for e in mask_edges(moves) {
                    let builder = pos.builder | 1 << e.0;
                    options.push((Action::Claim(e), Position { builder, ..pos }));
                }
            }
            Phase::Breaker { .. } => {
                for e in mask_edges(unclaimed) {
                    let blocker = pos.blocker | 1 << e.0;
                    options.push((Action::Claim(e), Position { blocker, ..pos }));
                }
            }
            Phase::Waiter => {
                for offer in solver.offers(pos.builder, pos.blocker) {
                    let next = Position {
                        phase: Phase::Client { offer },
                        ..pos
                    };
                    options.push((Action::Offer(mask_edges(offer)), next));
                }
            }
            Phase::Client { offer } => {
                for e in mask_edges(offer) {
                    let next = Position {
                        builder: pos.builder | 1 << e.0,
                        blocker: pos.blocker | (offer & !(1 << e.0)),
                        phase: Phase::Maker,
                    };
                    options.push((Action::Choose(e), next));
                }
            }
        }
        if options.is_empty() {
            return Ok(Decision::new(
                Action::Forfeit("no legal move".into()),
                "solver-oracle/forfeit",
            ));
        }
        for (action, next) in &options {
            let builder_wins = match (pos.phase, next.phase) {
                (Phase::Maker, _) | (Phase::Client { .. }, _) => {
                    solver.after_builder_claim(next.builder, next.blocker).map_err(err)?
                }
                (Phase::Breaker { left }, _) => {
                    let rest = solver.all & !(next.builder | next.blocker);
                    if rest == 0 {
                        false
                    } else if left > 1 {
                        solver.breaker_node(next.builder, next.blocker, left - 1).map_err(err)?
                    } else {
                        solver.maker_node(next.builder, next.blocker).map_err(err)?
                    }
                }
                (Phase::Waiter, Phase::Client { offer }) => {
                    solver.client_node(next.builder, next.blocker, offer).map_err(err)?
                }
                (Phase::Waiter, _) => unreachable!("waiter moves lead to client choices"),
            };
            if builder_wins == builder_side {
                return Ok(Decision::new(action.clone(), "solver-oracle/winning"));
            }
        }
        Ok(Decision::new(options[0].0.clone(), "solver-oracle/losing"))
    }

    fn clone_box(&self) -> Box<dyn Strategy> {
        Box::new(self.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::board::{GameConfig, Rules, Variant};
    use crate::engine::{run_game, Hooks};
    use crate::solver::solve;

    #[test]
    fn oracle_pair_realizes_game_value() {
        for (n, b, variant) in [
            (5, 1, Variant::MakerBreaker),
            (5, 2, Variant::MakerBreaker),
            (4, 1, Variant::ClientWaiter),
            (4, 0, Variant::ClientWaiter),
        ] {
            let cfg = GameConfig::new(n, b, variant, Rules::Connected, 0).unwrap();
            let (br, bl) = match variant {
                Variant::MakerBreaker => (Role::Maker, Role::Breaker),
                Variant::ClientWaiter => (Role::Client, Role::Waiter),
            };
            let mut builder = SolverOracle::new(br);
            let mut blocker = SolverOracle::new(bl);
            let t = run_game(cfg, &mut builder, &mut blocker, &mut Hooks::observe()).unwrap();
            let value = solve(&cfg, SolverOptions::default()).unwrap().winner;
            assert_eq!(t.result.unwrap().winner, value, "{cfg:?}");
        }
    }
}

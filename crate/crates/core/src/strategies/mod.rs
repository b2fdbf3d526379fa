//! Players: the three explicit strategies plus baseline opponents, and a
//! registry resolving them by name.

pub mod baseline;
pub mod breaker_connected;
pub mod client_connected;
pub mod maker_oc;

pub use baseline::{GreedyBreaker, GreedyClient, GreedyMaker, GreedyWaiter, RandomPlayer};
pub use breaker_connected::{breaker_connected_move, BreakerConnected};
pub use client_connected::{client_connected_move, compute_critical, ClientConnected, CriticalReport};
pub use maker_oc::{maker_oc_move, MakerOc, MakerPhaseState};

use thiserror::Error;

use crate::engine::{Role, Strategy};
use crate::solver::SolverOracle;

pub const STRATEGY_NAMES: &[&str] = &[
    "maker-oc",
    "breaker-connected",
    "client-connected",
    "random-maker",
    "random-breaker",
    "random-waiter",
    "random-client",
    "greedy-maker",
    "greedy-breaker",
    "greedy-waiter",
    "greedy-client",
    "solver-oracle",
];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RegistryError {
    #[error("unknown strategy {0:?}; known: {known}", known = STRATEGY_NAMES.join(", "))]
    Unknown(String),
    #[error("strategy {name} cannot play as {role:?}")]
    WrongRole { name: String, role: Role },
}

/// Roles a named strategy can fill.
pub fn roles_of(name: &str) -> Option<&'static [Role]> {
    Some(match name {
        "maker-oc" | "random-maker" | "greedy-maker" => &[Role::Maker],
        "breaker-connected" | "random-breaker" | "greedy-breaker" => &[Role::Breaker],
        "client-connected" | "random-client" | "greedy-client" => &[Role::Client],
        "random-waiter" | "greedy-waiter" => &[Role::Waiter],
        "solver-oracle" => &[Role::Maker, Role::Breaker, Role::Waiter, Role::Client],
        _ => return None,
    })
}

/// Builds a strategy by registry name for the given role.
pub fn build_strategy(name: &str, role: Role, seed: u64) -> Result<Box<dyn Strategy>, RegistryError> {
    let roles = roles_of(name).ok_or_else(|| RegistryError::Unknown(name.to_string()))?;
    if !roles.contains(&role) {
        return Err(RegistryError::WrongRole {
            name: name.to_string(),
            role,
        });
    }
    Ok(match name {
        "maker-oc" => Box::new(MakerOc::new()),
        "breaker-connected" => Box::new(BreakerConnected),
        "client-connected" => Box::new(ClientConnected),
        "random-maker" => Box::new(RandomPlayer::maker(seed)),
        "random-breaker" => Box::new(RandomPlayer::breaker(seed)),
        "random-waiter" => Box::new(RandomPlayer::waiter(seed)),
        "random-client" => Box::new(RandomPlayer::client(seed)),
        "greedy-maker" => Box::new(GreedyMaker),
        "greedy-breaker" => Box::new(GreedyBreaker),
        "greedy-waiter" => Box::new(GreedyWaiter),
        "greedy-client" => Box::new(GreedyClient),
        "solver-oracle" => Box::new(SolverOracle::new(role)),
        _ => unreachable!("roles_of covers every name"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_name_builds_for_its_roles() {
        for name in STRATEGY_NAMES {
            for &role in roles_of(name).unwrap() {
                let s = build_strategy(name, role, 1).unwrap();
                assert_eq!(s.name(), *name);
            }
        }
        assert!(matches!(
            build_strategy("maker-oc", Role::Breaker, 0),
            Err(RegistryError::WrongRole { .. })
        ));
        assert!(matches!(
            build_strategy("nobody", Role::Maker, 0),
            Err(RegistryError::Unknown(_))
        ));
    }
}

use super::{EngineError, Move};
use crate::board::GameState;

/// A check run after every half-move.
pub trait InvariantHook: Send {
    fn name(&self) -> &str;

    /// `state` is the position after `mv` was applied.
    fn check(&mut self, state: &GameState, mv: &Move) -> Result<(), String>;
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Default)]
pub enum HookMode {
    /// Record violations and keep playing.
    #[default]
    Observe,
    /// Stop the game at the first violation.
    Assert,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Violation {
    pub s: usize,
    pub k: usize,
    pub hook: String,
    pub message: String,
    pub digest: String,
}

#[derive(Default)]
pub struct Hooks {
    pub mode: HookMode,
    checkers: Vec<Box<dyn InvariantHook>>,
    pub violations: Vec<Violation>,
}

impl Hooks {
    pub fn observe() -> Self {
        Self::default()
    }

    pub fn assert() -> Self {
        Self {
            mode: HookMode::Assert,
            ..Self::default()
        }
    }

    pub fn with(mut self, hook: impl InvariantHook + 'static) -> Self {
        self.checkers.push(Box::new(hook));
        self
    }

    pub fn push(&mut self, hook: Box<dyn InvariantHook>) {
        self.checkers.push(hook);
    }

    pub fn is_empty(&self) -> bool {
        self.checkers.is_empty()
    }

    pub fn run(&mut self, state: &GameState, mv: &Move) -> Result<(), EngineError> {
        for hook in &mut self.checkers {
            if let Err(message) = hook.check(state, mv) {
                let v = Violation {
                    s: mv.s,
                    k: mv.k,
                    hook: hook.name().to_string(),
                    message,
                    digest: state.digest(),
                };
                if self.mode == HookMode::Assert {
                    return Err(EngineError::InvariantViolation {
                        s: v.s,
                        k: v.k,
                        hook: v.hook,
                        message: v.message,
                        digest: v.digest,
                    });
                }
                self.violations.push(v);
            }
        }
        Ok(())
    }
}

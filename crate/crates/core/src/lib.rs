//! Biased odd-cycle games on the complete graph K_n.
//!
//! Maker-Breaker and monotone Client-Waiter play under free and connected
//! rules, explicit strategies for both sides, an exact solver for small
//! boards and the optimization behind the Maker threshold constant.

pub mod board;
pub mod engine;
pub mod invariants;
pub mod optimizer;
pub mod parity;
pub mod solver;
pub mod strategies;
pub mod tournament;
pub mod vertex_set;

pub use board::{
    edge_endpoints, edge_index, Board, BoardError, EdgeId, EndReason, GameConfig, GameResult,
    GameState, Mark, Part, Rules, Side, Status, Turn, Variant, Vertex, Winner,
};
pub use parity::ParityForest;
pub use vertex_set::VertexSet;

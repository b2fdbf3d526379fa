//! Exact game values for small boards.
//!
//! Positions are pairs of edge bitmasks plus whose turn it is. Breaker's
//! compound turn is expanded one claim at a time and Waiter's offers are
//! enumerated as sets. Odd cycles are found by 2-colouring the builder's
//! graph directly, independently of the board's parity forest.

mod canonical;
pub mod fixtures;
mod oracle;
mod verify;

pub use oracle::SolverOracle;
pub use verify::{verify_strategy, Verdict, VerificationResult, VerifyOptions};

use std::collections::HashMap;

use itertools::Itertools;
use thiserror::Error;

use crate::board::{GameConfig, GameState, Mark, Rules, Turn, Variant, Winner};

pub const SOLVER_VERSION: &str = "1";

/// Largest board the bitmask representation supports.
pub const MAX_SOLVER_N: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolverLimits {
    pub max_n_mb: usize,
    /// Allowed for Maker-Breaker when symmetry reduction is on.
    pub max_n_mb_canonical: usize,
    pub max_n_cw: usize,
    pub max_nodes: u64,
}

impl Default for SolverLimits {
    fn default() -> Self {
        Self {
            max_n_mb: 6,
            max_n_mb_canonical: 7,
            max_n_cw: 5,
            max_nodes: 100_000_000,
        }
    }
}

impl SolverLimits {
    /// Applies overrides such as `"mb=7,cw=6,nodes=1000000"`.
    pub fn with_overrides(mut self, spec: &str) -> Result<Self, SolverError> {
        for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| SolverError::BadOverride(part.to_string()))?;
            let value: u64 = value
                .trim()
                .parse()
                .map_err(|_| SolverError::BadOverride(part.to_string()))?;
            match key.trim() {
                "mb" => self.max_n_mb = value as usize,
                "mb-canonical" => self.max_n_mb_canonical = value as usize,
                "cw" => self.max_n_cw = value as usize,
                "nodes" => self.max_nodes = value,
                _ => return Err(SolverError::BadOverride(part.to_string())),
            }
        }
        Ok(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolverOptions {
    pub memo: bool,
    pub canonical: bool,
    pub limits: SolverLimits,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            memo: true,
            canonical: false,
            limits: SolverLimits::default(),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolverError {
    #[error("n = {n} exceeds the {what} limit of {limit}; raise it with ODDCYCLE_CAPACITY_OVERRIDE (e.g. \"mb=7,cw=6\") at your own risk")]
    Capacity {
        what: &'static str,
        n: usize,
        limit: usize,
    },
    #[error("search stopped after {nodes} nodes (cap {cap}); max depth reached {max_depth}")]
    NodeCap { nodes: u64, cap: u64, max_depth: usize },
    #[error("bad capacity override {0:?}; expected key=value pairs with keys mb, mb-canonical, cw, nodes")]
    BadOverride(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("engine error during search: {0}")]
    Engine(String),
}

/// Whose decision a position waits for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Phase {
    Maker,
    Breaker { left: u32 },
    Waiter,
    Client { offer: u32 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Position {
    pub builder: u32,
    pub blocker: u32,
    pub phase: Phase,
}

impl Position {
    pub fn start(variant: Variant) -> Self {
        Self {
            builder: 0,
            blocker: 0,
            phase: match variant {
                Variant::MakerBreaker => Phase::Maker,
                Variant::ClientWaiter => Phase::Waiter,
            },
        }
    }

    /// The position of an unfinished game; `None` when the game is over or
    /// the board is too large.
    pub fn from_state(state: &GameState) -> Option<Self> {
        if state.is_over() || state.n() > MAX_SOLVER_N {
            return None;
        }
        let mut builder = 0u32;
        let mut blocker = 0u32;
        for (i, m) in state.marks().iter().enumerate() {
            match m {
                Mark::Builder => builder |= 1 << i,
                Mark::Blocker => blocker |= 1 << i,
                Mark::Unclaimed => {}
            }
        }
        let phase = match &state.turn {
            Turn::BuilderClaim => Phase::Maker,
            Turn::BlockerClaim { left } => Phase::Breaker { left: *left as u32 },
            Turn::WaiterOffer => Phase::Waiter,
            Turn::ClientChoose { offer } => Phase::Client {
                offer: offer.iter().fold(0, |m, e| m | 1 << e.0),
            },
        };
        Some(Self {
            builder,
            blocker,
            phase,
        })
    }
}

/// Edge tables and search for one configuration.
pub struct Solver {
    n: usize,
    b: usize,
    variant: Variant,
    rules: Rules,
    ends: Vec<(u8, u8)>,
    /// Edges incident to each vertex.
    star: Vec<u32>,
    all: u32,
    opts: SolverOptions,
    memo: HashMap<u64, bool>,
    canon: Option<canonical::Canonicalizer>,
    pub nodes: u64,
}

impl Solver {
    pub fn new(config: &GameConfig, opts: SolverOptions) -> Result<Self, SolverError> {
        config
            .validate()
            .map_err(|e| SolverError::Config(e.to_string()))?;
        let n = config.n;
        let limits = opts.limits;
        let (what, limit) = match config.variant {
            Variant::MakerBreaker if opts.canonical => ("maker-breaker (symmetry-reduced)", limits.max_n_mb_canonical),
            Variant::MakerBreaker => ("maker-breaker", limits.max_n_mb),
            Variant::ClientWaiter => ("client-waiter", limits.max_n_cw),
        };
        let limit = limit.min(MAX_SOLVER_N);
        if n > limit {
            return Err(SolverError::Capacity { what, n, limit });
        }
        Ok(Self::unchecked(config, opts))
    }

    fn unchecked(config: &GameConfig, opts: SolverOptions) -> Self {
        let n = config.n;
        let mut ends = Vec::new();
        let mut star = vec![0u32; n];
        for u in 0..n {
            for v in u + 1..n {
                let bit = 1u32 << ends.len();
                star[u] |= bit;
                star[v] |= bit;
                ends.push((u as u8, v as u8));
            }
        }
        let all = if ends.len() == 32 {
            u32::MAX
        } else {
            (1u32 << ends.len()) - 1
        };
        Self {
            n,
            b: config.b,
            variant: config.variant,
            rules: config.rules,
            canon: opts.canonical.then(|| canonical::Canonicalizer::new(n, &ends)),
            ends,
            star,
            all,
            opts,
            memo: HashMap::new(),
            nodes: 0,
        }
    }

    pub fn edge_count(&self) -> usize {
        self.ends.len()
    }

    /// Vertices touched by the edges of `mask`.
    fn touched(&self, mask: u32) -> u32 {
        let mut t = 0u32;
        let mut m = mask;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            let (u, v) = self.ends[i];
            t |= 1 << u | 1 << v;
        }
        t
    }

    /// Unclaimed edges with an endpoint in the builder's graph.
    fn incident(&self, builder: u32, unclaimed: u32) -> u32 {
        let t = self.touched(builder);
        let mut reach = 0u32;
        for v in 0..self.n {
            if t >> v & 1 == 1 {
                reach |= self.star[v];
            }
        }
        reach & unclaimed
    }

    /// 2-colours the graph of `mask` by breadth-first search.
    pub fn is_bipartite(&self, mask: u32) -> bool {
        let mut adj = [0u16; MAX_SOLVER_N];
        let mut m = mask;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            let (u, v) = self.ends[i];
            adj[u as usize] |= 1 << v;
            adj[v as usize] |= 1 << u;
        }
        let mut colour = [u8::MAX; MAX_SOLVER_N];
        for s in 0..self.n {
            if colour[s] != u8::MAX || adj[s] == 0 {
                continue;
            }
            colour[s] = 0;
            let mut queue = vec![s];
            while let Some(x) = queue.pop() {
                for y in 0..self.n {
                    if adj[x] >> y & 1 == 0 {
                        continue;
                    }
                    if colour[y] == u8::MAX {
                        colour[y] = colour[x] ^ 1;
                        queue.push(y);
                    } else if colour[y] == colour[x] {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn maker_moves(&self, builder: u32, unclaimed: u32) -> u32 {
        if self.rules == Rules::Connected && builder != 0 {
            self.incident(builder, unclaimed)
        } else {
            unclaimed
        }
    }

    /// Offerable edges for Waiter (connected first-round stars are handled
    /// separately in [`Solver::offers`]).
    fn offer_pool(&self, builder: u32, unclaimed: u32) -> u32 {
        self.maker_moves(builder, unclaimed)
    }

    /// All legal offers as edge masks, sorted and without repeats.
    pub fn offers(&self, builder: u32, blocker: u32) -> Vec<u32> {
        let unclaimed = self.all & !(builder | blocker);
        let max = self.b + 1;
        let mut out = Vec::new();
        let push_subsets = |pool: u32, out: &mut Vec<u32>| {
            let bits: Vec<u32> = (0..32).filter(|i| pool >> i & 1 == 1).collect();
            for k in 1..=max.min(bits.len()) {
                for combo in bits.iter().combinations(k) {
                    out.push(combo.iter().fold(0u32, |m, &&i| m | 1 << i));
                }
            }
        };
        if self.rules == Rules::Connected && builder == 0 {
            for v in 0..self.n {
                push_subsets(self.star[v] & unclaimed, &mut out);
            }
            out.sort_unstable();
            out.dedup();
        } else {
            push_subsets(self.offer_pool(builder, unclaimed), &mut out);
            out.sort_unstable();
        }
        out
    }

    fn count_node(&mut self) -> Result<(), SolverError> {
        self.nodes += 1;
        if self.nodes > self.opts.limits.max_nodes {
            return Err(SolverError::NodeCap {
                nodes: self.nodes,
                cap: self.opts.limits.max_nodes,
                max_depth: 0,
            });
        }
        Ok(())
    }

    fn key(&self, builder: u32, blocker: u32, tag: u32) -> u64 {
        let (b, k) = match &self.canon {
            Some(c) => c.canonical(builder, blocker),
            None => (builder, blocker),
        };
        (b as u64) | (k as u64) << 28 | (tag as u64) << 56
    }

    /// Whether the builder wins from `pos` with best play on both sides.
    pub fn builder_wins(&mut self, pos: &Position) -> Result<bool, SolverError> {
        match pos.phase {
            Phase::Maker => self.maker_node(pos.builder, pos.blocker),
            Phase::Breaker { left } => self.breaker_node(pos.builder, pos.blocker, left),
            Phase::Waiter => self.waiter_node(pos.builder, pos.blocker),
            Phase::Client { offer } => self.client_node(pos.builder, pos.blocker, offer),
        }
    }

    /// Value after a builder claim: win, loss by exhaustion, or play on.
    fn after_builder_claim(&mut self, builder: u32, blocker: u32) -> Result<bool, SolverError> {
        if !self.is_bipartite(builder) {
            return Ok(true);
        }
        let unclaimed = self.all & !(builder | blocker);
        if unclaimed == 0 {
            return Ok(false);
        }
        match self.variant {
            Variant::MakerBreaker => {
                let left = (self.b as u32).min(unclaimed.count_ones());
                self.breaker_node(builder, blocker, left)
            }
            Variant::ClientWaiter => self.waiter_node(builder, blocker),
        }
    }

    fn maker_node(&mut self, builder: u32, blocker: u32) -> Result<bool, SolverError> {
        let unclaimed = self.all & !(builder | blocker);
        if unclaimed == 0 {
            return Ok(false);
        }
        let key = self.key(builder, blocker, 0);
        if self.opts.memo {
            if let Some(&v) = self.memo.get(&key) {
                return Ok(v);
            }
        }
        self.count_node()?;
        let mut moves = self.maker_moves(builder, unclaimed);
        let mut value = false;
        while moves != 0 {
            let e = moves.trailing_zeros();
            moves &= moves - 1;
            if self.after_builder_claim(builder | 1 << e, blocker)? {
                value = true;
                break;
            }
        }
        self.store(key, value);
        Ok(value)
    }

    fn breaker_node(&mut self, builder: u32, blocker: u32, left: u32) -> Result<bool, SolverError> {
        let unclaimed = self.all & !(builder | blocker);
        if unclaimed == 0 {
            return Ok(false);
        }
        let key = self.key(builder, blocker, left);
        if self.opts.memo {
            if let Some(&v) = self.memo.get(&key) {
                return Ok(v);
            }
        }
        self.count_node()?;
        let mut moves = unclaimed;
        let mut value = true;
        while moves != 0 {
            let e = moves.trailing_zeros();
            moves &= moves - 1;
            let nb = blocker | 1 << e;
            let child = if unclaimed & !(1 << e) == 0 {
                false
            } else if left > 1 {
                self.breaker_node(builder, nb, left - 1)?
            } else {
                self.maker_node(builder, nb)?
            };
            if !child {
                value = false;
                break;
            }
        }
        self.store(key, value);
        Ok(value)
    }

    fn waiter_node(&mut self, builder: u32, blocker: u32) -> Result<bool, SolverError> {
        let unclaimed = self.all & !(builder | blocker);
        if unclaimed == 0 {
            return Ok(false);
        }
        if self.rules == Rules::Connected && builder != 0 && self.incident(builder, unclaimed) == 0 {
            return Ok(true);
        }
        let key = self.key(builder, blocker, 31);
        if self.opts.memo {
            if let Some(&v) = self.memo.get(&key) {
                return Ok(v);
            }
        }
        self.count_node()?;
        let mut value = true;
        for offer in self.offers(builder, blocker) {
            if !self.client_node(builder, blocker, offer)? {
                value = false;
                break;
            }
        }
        self.store(key, value);
        Ok(value)
    }

    fn client_node(&mut self, builder: u32, blocker: u32, offer: u32) -> Result<bool, SolverError> {
        let mut rest = offer;
        while rest != 0 {
            let e = rest.trailing_zeros();
            rest &= rest - 1;
            let nb = builder | 1 << e;
            let nk = blocker | (offer & !(1 << e));
            if self.after_builder_claim(nb, nk)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn store(&mut self, key: u64, value: bool) {
        if self.opts.memo {
            let old = self.memo.insert(key, value);
            debug_assert!(old.is_none_or(|o| o == value), "memo entry changed");
        }
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveOutcome {
    pub winner: Winner,
    pub nodes: u64,
}

/// Winner of the game described by `config` under optimal play.
pub fn solve(config: &GameConfig, opts: SolverOptions) -> Result<SolveOutcome, SolverError> {
    let mut solver = Solver::new(config, opts)?;
    let wins = solver.builder_wins(&Position::start(config.variant))?;
    Ok(SolveOutcome {
        winner: if wins { Winner::Builder } else { Winner::Blocker },
        nodes: solver.nodes,
    })
}

pub fn solve_mb(config: &GameConfig, opts: SolverOptions) -> Result<SolveOutcome, SolverError> {
    if config.variant != Variant::MakerBreaker {
        return Err(SolverError::Config("solve_mb needs a maker-breaker config".into()));
    }
    solve(config, opts)
}

pub fn solve_cw(config: &GameConfig, opts: SolverOptions) -> Result<SolveOutcome, SolverError> {
    if config.variant != Variant::ClientWaiter {
        return Err(SolverError::Config("solve_cw needs a client-waiter config".into()));
    }
    solve(config, opts)
}

/// Smallest bias at which the blocking side wins. The search walks upward
/// from the smallest legal bias, which is sound because a blocker win at b
/// persists for every larger b.
pub fn exact_threshold(
    n: usize,
    variant: Variant,
    rules: Rules,
    opts: SolverOptions,
) -> Result<usize, SolverError> {
    let start = match variant {
        Variant::MakerBreaker => 1,
        Variant::ClientWaiter => 0,
    };
    let edges = n * (n - 1) / 2;
    for b in start..=edges {
        let cfg = GameConfig::new(n, b, variant, rules, 0)
            .map_err(|e| SolverError::Config(e.to_string()))?;
        if solve(&cfg, opts)?.winner == Winner::Blocker {
            return Ok(b);
        }
    }
    // With b at least the number of edges the blocker takes the whole board
    // after the first builder claim.
    Ok(edges)
}

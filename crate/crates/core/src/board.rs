//! The board: edges of K_n, who owns them, and the bipartition of the
//! builder's graph.
//!
//! "Builder" is Maker or Client, "blocker" is Breaker or Waiter. The state
//! keeps adjacency rows for both players as bitsets, a parity forest over the
//! builder's edges, the two parts V¹/V² of the builder's bipartition, the set
//! R of vertices the builder has not touched, and the set of unclaimed edges
//! that would close an odd cycle (the builder's current threats).

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::parity::{Link, ParityForest};
use crate::vertex_set::VertexSet;

pub type Vertex = usize;

/// Index of an edge of K_n in lexicographic order of `(u, v)`, `u < v`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(pub u32);

impl EdgeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

pub fn edge_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

fn row_offset(u: usize, n: usize) -> usize {
    u * (2 * n - u - 1) / 2
}

/// Lexicographic index of the pair `{u, v}`; the order of the arguments does
/// not matter.
pub fn edge_index(u: Vertex, v: Vertex, n: usize) -> Result<EdgeId, BoardError> {
    if u >= n || v >= n {
        return Err(BoardError::VertexOutOfRange { vertex: u.max(v), n });
    }
    if u == v {
        return Err(BoardError::Loop(u));
    }
    let (a, b) = if u < v { (u, v) } else { (v, u) };
    Ok(EdgeId((row_offset(a, n) + b - a - 1) as u32))
}

pub fn edge_endpoints(id: EdgeId, n: usize) -> Result<(Vertex, Vertex), BoardError> {
    let idx = id.index();
    if idx >= edge_count(n) {
        return Err(BoardError::EdgeOutOfRange { id, n });
    }
    // Rows shrink by one each step; a linear scan is fine for the sizes used.
    let mut u = 0;
    while row_offset(u + 1, n) <= idx {
        u += 1;
    }
    Ok((u, idx - row_offset(u, n) + u + 1))
}

/// Precomputed edge tables for one value of n, shared between states.
#[derive(Debug)]
pub struct Board {
    n: usize,
    endpoints: Vec<(u32, u32)>,
    offsets: Vec<usize>,
}

impl Board {
    pub fn new(n: usize) -> Self {
        let mut endpoints = Vec::with_capacity(edge_count(n));
        for u in 0..n {
            for v in u + 1..n {
                endpoints.push((u as u32, v as u32));
            }
        }
        let offsets = (0..n).map(|u| row_offset(u, n)).collect();
        Self {
            n,
            endpoints,
            offsets,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.endpoints.len()
    }

    #[inline]
    pub fn endpoints(&self, e: EdgeId) -> (Vertex, Vertex) {
        let (u, v) = self.endpoints[e.index()];
        (u as usize, v as usize)
    }

    #[inline]
    pub fn edge(&self, u: Vertex, v: Vertex) -> EdgeId {
        debug_assert!(u != v && u < self.n && v < self.n);
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        EdgeId((self.offsets[a] + b - a - 1) as u32)
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> {
        (0..self.endpoints.len() as u32).map(EdgeId)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[repr(u8)]
pub enum Mark {
    Unclaimed = 0,
    Builder = 1,
    Blocker = 2,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Builder,
    Blocker,
}

/// One of the two parts of the builder's bipartition.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Part {
    One,
    Two,
}

impl Part {
    pub fn other(self) -> Part {
        match self {
            Part::One => Part::Two,
            Part::Two => Part::One,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Part::One => 0,
            Part::Two => 1,
        }
    }

    pub const BOTH: [Part; 2] = [Part::One, Part::Two];
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    MakerBreaker,
    ClientWaiter,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rules {
    Free,
    Connected,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::MakerBreaker => "maker-breaker",
            Variant::ClientWaiter => "client-waiter",
        })
    }
}

impl fmt::Display for Rules {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rules::Free => "free",
            Rules::Connected => "connected",
        })
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GameConfig {
    pub n: usize,
    pub b: usize,
    pub variant: Variant,
    pub rules: Rules,
    pub seed: u64,
}

impl GameConfig {
    pub fn new(
        n: usize,
        b: usize,
        variant: Variant,
        rules: Rules,
        seed: u64,
    ) -> Result<Self, BoardError> {
        let cfg = Self {
            n,
            b,
            variant,
            rules,
            seed,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn maker_breaker(n: usize, b: usize, rules: Rules) -> Result<Self, BoardError> {
        Self::new(n, b, Variant::MakerBreaker, rules, 0)
    }

    pub fn client_waiter(n: usize, b: usize, rules: Rules) -> Result<Self, BoardError> {
        Self::new(n, b, Variant::ClientWaiter, rules, 0)
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<(), BoardError> {
        if self.n < 3 {
            return Err(BoardError::InvalidConfig(format!(
                "n must be at least 3, got {}",
                self.n
            )));
        }
        if self.n > u16::MAX as usize {
            return Err(BoardError::InvalidConfig(format!("n = {} is too large", self.n)));
        }
        if self.variant == Variant::MakerBreaker && self.b == 0 {
            return Err(BoardError::InvalidConfig(
                "maker-breaker games need b >= 1".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Winner {
    Builder,
    Blocker,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EndReason {
    OddCycleClosed,
    BoardExhausted,
    BuilderForfeit,
    BlockerForfeit,
    NoLegalBuilderMove,
    NoOfferableEdges,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GameResult {
    pub winner: Winner,
    pub reason: EndReason,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    InProgress,
    Finished(GameResult),
}

/// Whose decision the game is waiting for.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Turn {
    BuilderClaim,
    /// Blocker claims one edge; `left` includes the current claim.
    BlockerClaim { left: usize },
    WaiterOffer,
    ClientChoose { offer: Vec<EdgeId> },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoardError {
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("edge {id} out of range for n = {n}")]
    EdgeOutOfRange { id: EdgeId, n: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("edge {0} is already claimed")]
    AlreadyClaimed(EdgeId),
    #[error("connected rules: edge {0} does not touch the builder's graph")]
    NotIncident(EdgeId),
    #[error("game is already over")]
    GameOver,
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

/// What a single claim changed.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct ClaimEffect {
    pub closed_odd_cycle: bool,
    /// Vertices that left R with this claim.
    pub newly_touched: [Option<Vertex>; 2],
}

#[derive(Clone, Debug)]
pub struct GameState {
    board: Arc<Board>,
    config: GameConfig,
    marks: Vec<Mark>,
    builder_adj: Vec<VertexSet>,
    blocker_adj: Vec<VertexSet>,
    forest: ParityForest,
    part: Vec<Option<Part>>,
    parts: [VertexSet; 2],
    untouched: VertexSet,
    /// Component members, valid at forest roots of touched vertices.
    members: Vec<Vec<Vertex>>,
    odd_closers: BTreeSet<EdgeId>,
    pool: Vec<EdgeId>,
    pool_pos: Vec<u32>,
    builder_edges: usize,
    blocker_edges: usize,
    pub round: usize,
    pub k: usize,
    pub turn: Turn,
    pub status: Status,
}

const NOT_IN_POOL: u32 = u32::MAX;

impl GameState {
    pub fn new(config: GameConfig) -> Self {
        Self::with_board(config, Arc::new(Board::new(config.n)))
    }

    pub fn with_board(config: GameConfig, board: Arc<Board>) -> Self {
        let n = config.n;
        assert_eq!(board.n(), n, "board size does not match config");
        let m = board.edge_count();
        let turn = match config.variant {
            Variant::MakerBreaker => Turn::BuilderClaim,
            Variant::ClientWaiter => Turn::WaiterOffer,
        };
        Self {
            board,
            config,
            marks: vec![Mark::Unclaimed; m],
            builder_adj: vec![VertexSet::new(n); n],
            blocker_adj: vec![VertexSet::new(n); n],
            forest: ParityForest::new(n),
            part: vec![None; n],
            parts: [VertexSet::new(n), VertexSet::new(n)],
            untouched: VertexSet::full(n),
            members: (0..n).map(|v| vec![v]).collect(),
            odd_closers: BTreeSet::new(),
            pool: (0..m as u32).map(EdgeId).collect(),
            pool_pos: (0..m as u32).collect(),
            builder_edges: 0,
            blocker_edges: 0,
            round: 0,
            k: 0,
            turn,
            status: Status::InProgress,
        }
    }

    pub fn config(&self) -> &GameConfig {
        &self.config
    }

    pub fn board(&self) -> &Arc<Board> {
        &self.board
    }

    pub fn n(&self) -> usize {
        self.config.n
    }

    pub fn b(&self) -> usize {
        self.config.b
    }

    pub fn mark(&self, e: EdgeId) -> Mark {
        self.marks[e.index()]
    }

    pub fn marks(&self) -> &[Mark] {
        &self.marks
    }

    pub fn endpoints(&self, e: EdgeId) -> (Vertex, Vertex) {
        self.board.endpoints(e)
    }

    pub fn edge(&self, u: Vertex, v: Vertex) -> EdgeId {
        self.board.edge(u, v)
    }

    pub fn is_unclaimed(&self, e: EdgeId) -> bool {
        self.marks[e.index()] == Mark::Unclaimed
    }

    pub fn unclaimed_count(&self) -> usize {
        self.pool.len()
    }

    pub fn builder_edge_count(&self) -> usize {
        self.builder_edges
    }

    pub fn blocker_edge_count(&self) -> usize {
        self.blocker_edges
    }

    /// Unclaimed edges in no particular order; the order is a deterministic
    /// function of the claim history.
    pub fn unclaimed_pool(&self) -> &[EdgeId] {
        &self.pool
    }

    pub fn unclaimed_edges(&self) -> Vec<EdgeId> {
        let mut out = self.pool.clone();
        out.sort_unstable();
        out
    }

    pub fn edges_of(&self, side: Side) -> Vec<EdgeId> {
        let want = match side {
            Side::Builder => Mark::Builder,
            Side::Blocker => Mark::Blocker,
        };
        self.board
            .edges()
            .filter(|e| self.marks[e.index()] == want)
            .collect()
    }

    pub fn builder_adj(&self, v: Vertex) -> &VertexSet {
        &self.builder_adj[v]
    }

    pub fn blocker_adj(&self, v: Vertex) -> &VertexSet {
        &self.blocker_adj[v]
    }

    /// Vertices joined to `v` by an unclaimed edge.
    pub fn unclaimed_adj(&self, v: Vertex) -> VertexSet {
        let mut set = VertexSet::full(self.n());
        set.remove(v);
        set.difference_with(&self.builder_adj[v]);
        set.difference_with(&self.blocker_adj[v]);
        set
    }

    pub fn part_of(&self, v: Vertex) -> Option<Part> {
        self.part[v]
    }

    pub fn part_set(&self, p: Part) -> &VertexSet {
        &self.parts[p.index()]
    }

    /// R: vertices not touched by any builder edge.
    pub fn untouched(&self) -> &VertexSet {
        &self.untouched
    }

    pub fn touched(&self) -> VertexSet {
        let mut v = self.parts[0].clone();
        v.union_with(&self.parts[1]);
        v
    }

    pub fn forest(&self) -> &ParityForest {
        &self.forest
    }

    /// Unclaimed edges that would close an odd cycle in the builder's graph.
    pub fn odd_closers(&self) -> &BTreeSet<EdgeId> {
        &self.odd_closers
    }

    pub fn is_over(&self) -> bool {
        matches!(self.status, Status::Finished(_))
    }

    pub fn result(&self) -> Option<GameResult> {
        match self.status {
            Status::Finished(r) => Some(r),
            Status::InProgress => None,
        }
    }

    pub fn finish(&mut self, winner: Winner, reason: EndReason) {
        if !self.is_over() {
            self.status = Status::Finished(GameResult { winner, reason });
        }
    }

    /// Whether adding `e` to the builder's graph closes an odd cycle.
    pub fn closes_odd_cycle(&self, e: EdgeId) -> Result<bool, BoardError> {
        if e.index() >= self.marks.len() {
            return Err(BoardError::EdgeOutOfRange { id: e, n: self.n() });
        }
        if !self.is_unclaimed(e) {
            return Err(BoardError::AlreadyClaimed(e));
        }
        let (u, v) = self.endpoints(e);
        Ok(self.forest.closes_odd_cycle(u, v))
    }

    /// Moves the builder may make. Under connected Maker-Breaker rules these
    /// are the unclaimed edges touching the builder's graph, or every
    /// unclaimed edge while that graph is empty.
    pub fn legal_builder_moves(&self) -> Vec<EdgeId> {
        if self.config.rules == Rules::Free
            || self.config.variant == Variant::ClientWaiter
            || self.builder_edges == 0
        {
            return self.unclaimed_edges();
        }
        self.edges_touching_builder()
    }

    /// Unclaimed edges with at least one endpoint in V, sorted.
    pub fn edges_touching_builder(&self) -> Vec<EdgeId> {
        let touched = self.touched();
        let mut out = Vec::new();
        for v in touched.iter() {
            for u in self.unclaimed_adj(v).iter() {
                if !touched.contains(u) || v < u {
                    out.push(self.edge(u, v));
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn has_edge_touching_builder(&self) -> bool {
        self.touched()
            .iter()
            .any(|v| !self.unclaimed_adj(v).is_empty())
    }

    /// Whether `e` is a legal claim for `side` under the configured rules.
    pub fn check_claim(&self, side: Side, e: EdgeId) -> Result<(), BoardError> {
        if e.index() >= self.marks.len() {
            return Err(BoardError::EdgeOutOfRange { id: e, n: self.n() });
        }
        if self.is_over() {
            return Err(BoardError::GameOver);
        }
        if !self.is_unclaimed(e) {
            return Err(BoardError::AlreadyClaimed(e));
        }
        if side == Side::Builder
            && self.config.variant == Variant::MakerBreaker
            && self.config.rules == Rules::Connected
            && self.builder_edges > 0
        {
            let (u, v) = self.endpoints(e);
            if self.part[u].is_none() && self.part[v].is_none() {
                return Err(BoardError::NotIncident(e));
            }
        }
        Ok(())
    }

    /// Claims `e` for `side`, updating the bipartition and win status.
    pub fn apply_claim(&mut self, side: Side, e: EdgeId) -> Result<ClaimEffect, BoardError> {
        self.check_claim(side, e)?;
        let (u, v) = self.endpoints(e);
        self.remove_from_pool(e);
        self.odd_closers.remove(&e);
        match side {
            Side::Blocker => {
                self.marks[e.index()] = Mark::Blocker;
                self.blocker_adj[u].insert(v);
                self.blocker_adj[v].insert(u);
                self.blocker_edges += 1;
                Ok(ClaimEffect {
                    closed_odd_cycle: false,
                    newly_touched: [None, None],
                })
            }
            Side::Builder => {
                self.marks[e.index()] = Mark::Builder;
                self.builder_adj[u].insert(v);
                self.builder_adj[v].insert(u);
                self.builder_edges += 1;
                Ok(self.link_builder_edge(u, v))
            }
        }
    }

    fn remove_from_pool(&mut self, e: EdgeId) {
        let pos = self.pool_pos[e.index()];
        debug_assert_ne!(pos, NOT_IN_POOL);
        let last = *self.pool.last().expect("pool is non-empty");
        self.pool.swap_remove(pos as usize);
        if last != e {
            self.pool_pos[last.index()] = pos;
        }
        self.pool_pos[e.index()] = NOT_IN_POOL;
    }

    fn set_part(&mut self, v: Vertex, p: Part) {
        if let Some(old) = self.part[v] {
            self.parts[old.index()].remove(v);
        }
        self.part[v] = Some(p);
        self.parts[p.index()].insert(v);
        self.untouched.remove(v);
    }

    fn link_builder_edge(&mut self, u: Vertex, v: Vertex) -> ClaimEffect {
        let fresh_u = self.part[u].is_none();
        let fresh_v = self.part[v].is_none();
        let newly_touched = [fresh_u.then_some(u), fresh_v.then_some(v)];

        let (ru, _) = self.forest.find(u);
        let (rv, _) = self.forest.find(v);
        if ru == rv {
            let closed = self.forest.link(u, v) == Link::OddCycle;
            if closed {
                self.finish(Winner::Builder, EndReason::OddCycleClosed);
            }
            return ClaimEffect {
                closed_odd_cycle: closed,
                newly_touched,
            };
        }

        // Label the endpoints before merging the member lists.
        match (self.part[u], self.part[v]) {
            (None, None) => {
                let (lo, hi) = (u.min(v), u.max(v));
                self.set_part(lo, Part::One);
                self.set_part(hi, Part::Two);
            }
            (Some(pu), None) => self.set_part(v, pu.other()),
            (None, Some(pv)) => self.set_part(u, pv.other()),
            (Some(pu), Some(pv)) => {
                if pu == pv {
                    // Only reachable when two separate components merge under
                    // free rules: relabel the smaller one.
                    let flip_root = if self.members[ru].len() <= self.members[rv].len() {
                        ru
                    } else {
                        rv
                    };
                    let flip: Vec<Vertex> = self.members[flip_root].clone();
                    for w in flip {
                        let p = self.part[w].expect("member is touched").other();
                        self.set_part(w, p);
                    }
                }
            }
        }

        let side_u = std::mem::take(&mut self.members[ru]);
        let side_v = std::mem::take(&mut self.members[rv]);
        // Pairs across the merge with equal labels become threats.
        for &a in &side_u {
            let pa = self.part[a].expect("touched");
            for &c in &side_v {
                if self.part[c] == Some(pa) {
                    let e = self.board.edge(a, c);
                    if self.marks[e.index()] == Mark::Unclaimed {
                        self.odd_closers.insert(e);
                    }
                }
            }
        }
        let link = self.forest.link(u, v);
        debug_assert_eq!(link, Link::Merged);
        let (root, _) = self.forest.find(u);
        let mut merged = side_u;
        merged.extend(side_v);
        self.members[root] = merged;
        ClaimEffect {
            closed_odd_cycle: false,
            newly_touched,
        }
    }

    /// Blocker-claimed edges from `v` into V¹, V² and R (excluding `v`).
    pub fn part_degrees(&self, v: Vertex) -> (usize, usize, usize) {
        let adj = &self.blocker_adj[v];
        let mut r = adj.intersection_len(&self.untouched);
        if self.untouched.contains(v) && adj.contains(v) {
            r -= 1;
        }
        (
            adj.intersection_len(&self.parts[0]),
            adj.intersection_len(&self.parts[1]),
            r,
        )
    }

    pub fn blocker_deg_into(&self, v: Vertex, set: &VertexSet) -> usize {
        self.blocker_adj[v].intersection_len(set)
    }

    /// e(V^i, R) in the blocker's graph.
    pub fn blocker_edges_part_to_r(&self, p: Part) -> usize {
        let set = &self.parts[p.index()];
        self.untouched
            .iter()
            .map(|v| self.blocker_adj[v].intersection_len(set))
            .sum()
    }

    /// SHA-256 over the ownership vector in edge-id order, hex encoded.
    pub fn digest(&self) -> String {
        digest_marks(&self.marks)
    }
}

pub fn digest_marks(marks: &[Mark]) -> String {
    let bytes: Vec<u8> = marks.iter().map(|&m| m as u8).collect();
    hex::encode(Sha256::digest(&bytes))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mb(n: usize, rules: Rules) -> GameState {
        GameState::new(GameConfig::maker_breaker(n, 1, rules).unwrap())
    }

    #[test]
    fn edge_index_examples() {
        assert_eq!(edge_index(0, 1, 4).unwrap(), EdgeId(0));
        assert_eq!(edge_index(2, 3, 4).unwrap(), EdgeId(5));
        assert_eq!(edge_endpoints(EdgeId(3), 4).unwrap(), (1, 2));
        assert!(matches!(
            edge_index(0, 4, 4),
            Err(BoardError::VertexOutOfRange { .. })
        ));
        assert!(edge_endpoints(EdgeId(6), 4).is_err());
    }

    #[test]
    fn edge_index_round_trip_n10() {
        let n = 10;
        let mut expected = 0;
        for u in 0..n {
            for v in u + 1..n {
                let id = edge_index(u, v, n).unwrap();
                assert_eq!(id, EdgeId(expected));
                assert_eq!(edge_endpoints(id, n).unwrap(), (u, v));
                expected += 1;
            }
        }
        let board = Board::new(n);
        for e in board.edges() {
            let (u, v) = board.endpoints(e);
            assert_eq!(board.edge(v, u), e);
        }
    }

    #[test]
    fn closes_odd_cycle_examples() {
        let mut s = mb(4, Rules::Free);
        s.apply_claim(Side::Builder, s.edge(0, 1)).unwrap();
        s.apply_claim(Side::Builder, s.edge(1, 2)).unwrap();
        assert!(s.closes_odd_cycle(s.edge(0, 2)).unwrap());
        s.apply_claim(Side::Builder, s.edge(2, 3)).unwrap();
        assert!(!s.closes_odd_cycle(s.edge(0, 3)).unwrap());
        assert_eq!(
            s.closes_odd_cycle(s.edge(0, 1)),
            Err(BoardError::AlreadyClaimed(s.edge(0, 1)))
        );
    }

    #[test]
    fn legal_moves_connected() {
        let mut s = mb(4, Rules::Connected);
        assert_eq!(s.legal_builder_moves().len(), 6);
        s.apply_claim(Side::Builder, s.edge(0, 1)).unwrap();
        let legal = s.legal_builder_moves();
        let expect: Vec<_> = [(0, 2), (0, 3), (1, 2), (1, 3)]
            .iter()
            .map(|&(u, v)| s.edge(u, v))
            .collect();
        assert_eq!(legal, expect);
        for (u, v) in [(0, 2), (0, 3), (1, 2), (1, 3)] {
            s.apply_claim(Side::Blocker, s.edge(u, v)).unwrap();
        }
        assert!(s.legal_builder_moves().is_empty());
        assert_eq!(
            s.check_claim(Side::Builder, s.edge(2, 3)),
            Err(BoardError::NotIncident(s.edge(2, 3)))
        );
    }

    #[test]
    fn parts_seed_and_alternate() {
        let mut s = mb(5, Rules::Connected);
        s.apply_claim(Side::Builder, s.edge(0, 1)).unwrap();
        assert_eq!(s.part_of(0), Some(Part::One));
        assert_eq!(s.part_of(1), Some(Part::Two));
        assert_eq!(s.untouched().len(), 3);
        s.apply_claim(Side::Builder, s.edge(1, 2)).unwrap();
        assert_eq!(s.part_of(2), Some(Part::One));
        assert_eq!(s.odd_closers().iter().copied().collect::<Vec<_>>(), vec![s.edge(0, 2)]);
        let eff = s.apply_claim(Side::Builder, s.edge(0, 2)).unwrap();
        assert!(eff.closed_odd_cycle);
        assert_eq!(
            s.result(),
            Some(GameResult {
                winner: Winner::Builder,
                reason: EndReason::OddCycleClosed
            })
        );
    }

    #[test]
    fn lower_endpoint_seeds_part_one() {
        let mut s = mb(6, Rules::Free);
        s.apply_claim(Side::Builder, s.edge(4, 2)).unwrap();
        assert_eq!(s.part_of(2), Some(Part::One));
        assert_eq!(s.part_of(4), Some(Part::Two));
    }

    #[test]
    fn part_degree_examples() {
        let mut s = mb(5, Rules::Free);
        assert_eq!(s.part_degrees(3), (0, 0, 0));
        s.apply_claim(Side::Builder, s.edge(0, 1)).unwrap();
        s.apply_claim(Side::Blocker, s.edge(0, 3)).unwrap();
        assert_eq!(s.part_degrees(3), (1, 0, 0));
        s.apply_claim(Side::Blocker, s.edge(3, 4)).unwrap();
        assert_eq!(s.part_degrees(3), (1, 0, 1));
        assert_eq!(s.part_degrees(0), (0, 0, 1));
    }

    #[test]
    fn free_merge_relabels_smaller_component() {
        let mut s = mb(6, Rules::Free);
        s.apply_claim(Side::Builder, s.edge(0, 1)).unwrap();
        s.apply_claim(Side::Builder, s.edge(1, 2)).unwrap();
        s.apply_claim(Side::Builder, s.edge(3, 4)).unwrap();
        // 0 and 3 both sit in V¹; joining them forces a relabel of {3, 4}.
        s.apply_claim(Side::Builder, s.edge(0, 3)).unwrap();
        assert_eq!(s.part_of(3), Some(Part::Two));
        assert_eq!(s.part_of(4), Some(Part::One));
        assert!(s.odd_closers().contains(&s.edge(0, 4)));
        assert!(s.odd_closers().contains(&s.edge(2, 4)));
        assert!(s.odd_closers().contains(&s.edge(1, 3)));
    }

    #[test]
    fn pool_tracks_unclaimed() {
        let mut s = mb(5, Rules::Free);
        s.apply_claim(Side::Blocker, EdgeId(0)).unwrap();
        s.apply_claim(Side::Builder, EdgeId(9)).unwrap();
        s.apply_claim(Side::Blocker, EdgeId(4)).unwrap();
        assert_eq!(s.unclaimed_count(), 7);
        let mut pooled = s.unclaimed_pool().to_vec();
        pooled.sort();
        assert_eq!(pooled, s.unclaimed_edges());
        assert!(!pooled.contains(&EdgeId(4)));
    }
}

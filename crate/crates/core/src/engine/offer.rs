use std::collections::HashSet;
use std::fmt;

use crate::board::{EdgeId, GameState, Rules};

/// One violated rule of an offer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OfferClause {
    Empty,
    TooLarge { size: usize, max: usize },
    OutOfRange(EdgeId),
    Duplicate(EdgeId),
    AlreadyClaimed(EdgeId),
    NoCommonVertex,
    NotAdjacentToClient(EdgeId),
}

impl fmt::Display for OfferClause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OfferClause::Empty => write!(f, "size: offer is empty"),
            OfferClause::TooLarge { size, max } => {
                write!(f, "size: {size} edges offered, at most {max} allowed")
            }
            OfferClause::OutOfRange(e) => write!(f, "range: {e} is not an edge of the board"),
            OfferClause::Duplicate(e) => write!(f, "distinct: {e} offered twice"),
            OfferClause::AlreadyClaimed(e) => write!(f, "unclaimed: {e} is already claimed"),
            OfferClause::NoCommonVertex => {
                write!(f, "first-round star: offered edges share no common vertex")
            }
            OfferClause::NotAdjacentToClient(e) => {
                write!(f, "adjacency: {e} does not touch Client's graph")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OfferViolation(pub Vec<OfferClause>);

impl fmt::Display for OfferViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl std::error::Error for OfferViolation {}

/// Checks every rule an offer must satisfy and reports all that fail.
pub fn validate_offer(state: &GameState, offer: &[EdgeId]) -> Result<(), OfferViolation> {
    let mut bad = Vec::new();
    let max = state.b() + 1;
    if offer.is_empty() {
        bad.push(OfferClause::Empty);
    }
    if offer.len() > max {
        bad.push(OfferClause::TooLarge {
            size: offer.len(),
            max,
        });
    }
    let m = state.board().edge_count();
    let mut seen = HashSet::new();
    let mut valid = Vec::new();
    for &e in offer {
        if e.index() >= m {
            bad.push(OfferClause::OutOfRange(e));
            continue;
        }
        if !seen.insert(e) {
            bad.push(OfferClause::Duplicate(e));
            continue;
        }
        if !state.is_unclaimed(e) {
            bad.push(OfferClause::AlreadyClaimed(e));
        }
        valid.push(e);
    }
    if state.config().rules == Rules::Connected && !valid.is_empty() {
        if state.builder_edge_count() == 0 {
            let (a, b) = state.endpoints(valid[0]);
            let shares = |x: usize| {
                valid.iter().all(|&e| {
                    let (u, v) = state.endpoints(e);
                    u == x || v == x
                })
            };
            if !shares(a) && !shares(b) {
                bad.push(OfferClause::NoCommonVertex);
            }
        } else {
            for &e in &valid {
                let (u, v) = state.endpoints(e);
                if state.part_of(u).is_none() && state.part_of(v).is_none() {
                    bad.push(OfferClause::NotAdjacentToClient(e));
                }
            }
        }
    }
    if bad.is_empty() {
        Ok(())
    } else {
        Err(OfferViolation(bad))
    }
}

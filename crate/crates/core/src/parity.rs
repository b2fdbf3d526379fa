//! Union-find with parity bits.
//!
//! Each vertex stores the parity of the path to its parent. Two vertices in
//! the same tree are joined by an even path iff their parities to the root
//! agree, so a new edge between them closes an odd cycle exactly when the
//! parities are equal.

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParityForest {
    parent: Vec<usize>,
    rank: Vec<u8>,
    parity: Vec<bool>,
}

/// Outcome of adding an edge to the forest.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Link {
    /// Two distinct components were merged.
    Merged,
    /// Same component, opposite parity: the edge closes an even cycle.
    EvenCycle,
    /// Same component, equal parity: the edge closes an odd cycle.
    OddCycle,
}

impl ParityForest {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            rank: vec![0; n],
            parity: vec![false; n],
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    /// Root of `v` and the parity of the path from `v` to it. Compresses the
    /// traversed path.
    pub fn find(&mut self, v: usize) -> (usize, bool) {
        let mut path = Vec::new();
        let mut cur = v;
        while self.parent[cur] != cur {
            path.push(cur);
            cur = self.parent[cur];
        }
        let root = cur;
        // Walk back from the node nearest the root, accumulating parity.
        let mut acc = false;
        for &node in path.iter().rev() {
            acc ^= self.parity[node];
            self.parity[node] = acc;
            self.parent[node] = root;
        }
        (root, if path.is_empty() { false } else { self.parity[v] })
    }

    /// Non-mutating lookup.
    pub fn root_parity(&self, v: usize) -> (usize, bool) {
        let mut cur = v;
        let mut acc = false;
        while self.parent[cur] != cur {
            acc ^= self.parity[cur];
            cur = self.parent[cur];
        }
        (cur, acc)
    }

    pub fn same_component(&self, u: usize, v: usize) -> bool {
        self.root_parity(u).0 == self.root_parity(v).0
    }

    /// Whether the edge `uv` would close an odd cycle.
    pub fn closes_odd_cycle(&self, u: usize, v: usize) -> bool {
        let (ru, pu) = self.root_parity(u);
        let (rv, pv) = self.root_parity(v);
        ru == rv && pu == pv
    }

    /// Adds the edge `uv`, whose endpoints must receive opposite colours.
    pub fn link(&mut self, u: usize, v: usize) -> Link {
        let (ru, pu) = self.find(u);
        let (rv, pv) = self.find(v);
        if ru == rv {
            return if pu == pv { Link::OddCycle } else { Link::EvenCycle };
        }
        let (big, small) = if self.rank[ru] >= self.rank[rv] {
            (ru, rv)
        } else {
            (rv, ru)
        };
        self.parent[small] = big;
        // u and v must end up on opposite sides.
        self.parity[small] = !(pu ^ pv);
        if self.rank[big] == self.rank[small] {
            self.rank[big] += 1;
        }
        Link::Merged
    }
}

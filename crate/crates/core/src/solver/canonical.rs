//! Canonical labelling of positions under vertex permutations.
//!
//! Vertices are ordered by (builder degree, blocker degree); only
//! permutations inside groups of equal signature are tried, and the
//! lexicographically smallest relabelled pair of masks is the canonical form.
//! The set of tried relabellings is itself permutation invariant, so
//! isomorphic positions get the same form.

use itertools::Itertools;

pub struct Canonicalizer {
    n: usize,
    ends: Vec<(u8, u8)>,
    /// Edge index of {u, v}, row-major.
    index: Vec<u8>,
}

impl Canonicalizer {
    pub fn new(n: usize, ends: &[(u8, u8)]) -> Self {
        let mut index = vec![u8::MAX; n * n];
        for (i, &(u, v)) in ends.iter().enumerate() {
            index[u as usize * n + v as usize] = i as u8;
            index[v as usize * n + u as usize] = i as u8;
        }
        Self {
            n,
            ends: ends.to_vec(),
            index,
        }
    }

    fn degrees(&self, mask: u32) -> Vec<u8> {
        let mut deg = vec![0u8; self.n];
        let mut m = mask;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            let (u, v) = self.ends[i];
            deg[u as usize] += 1;
            deg[v as usize] += 1;
        }
        deg
    }

    fn relabel(&self, mask: u32, to: &[usize]) -> u32 {
        let mut out = 0u32;
        let mut m = mask;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            let (u, v) = self.ends[i];
            let j = self.index[to[u as usize] * self.n + to[v as usize]];
            out |= 1 << j;
        }
        out
    }

    pub fn canonical(&self, builder: u32, blocker: u32) -> (u32, u32) {
        let db = self.degrees(builder);
        let dk = self.degrees(blocker);
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&v| (db[v], dk[v]));
        let groups: Vec<Vec<usize>> = order
            .iter()
            .copied()
            .chunk_by(|&v| (db[v], dk[v]))
            .into_iter()
            .map(|(_, g)| g.collect())
            .collect();

        let mut best = (u32::MAX, u32::MAX);
        let mut to = vec![0usize; self.n];
        let choices: Vec<Vec<Vec<usize>>> = groups
            .iter()
            .map(|g| g.iter().copied().permutations(g.len()).collect())
            .collect();
        for pick in choices.iter().map(|c| c.iter()).multi_cartesian_product() {
            let mut slot = 0;
            for perm in pick {
                for &v in perm {
                    to[v] = slot;
                    slot += 1;
                }
            }
            let cand = (self.relabel(builder, &to), self.relabel(blocker, &to));
            if cand < best {
                best = cand;
            }
        }
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup(n: usize) -> (Canonicalizer, Vec<(u8, u8)>) {
        let mut ends = Vec::new();
        for u in 0..n as u8 {
            for v in u + 1..n as u8 {
                ends.push((u, v));
            }
        }
        (Canonicalizer::new(n, &ends), ends)
    }

    #[test]
    fn isomorphic_positions_agree() {
        let (c, ends) = setup(5);
        let id = |u: u8, v: u8| ends.iter().position(|&e| e == (u.min(v), u.max(v))).unwrap();
        // Path 0-1-2 for the builder, blocker edge 3-4, versus its image
        // under the swap 0<->4, 1<->3.
        let a = (1 << id(0, 1) | 1 << id(1, 2), 1 << id(3, 4));
        let b = (1 << id(4, 3) | 1 << id(3, 2), 1 << id(1, 0));
        assert_eq!(c.canonical(a.0, a.1), c.canonical(b.0, b.1));
        let other = (1 << id(0, 1) | 1 << id(2, 3), 1 << id(3, 4));
        assert_ne!(c.canonical(a.0, a.1), c.canonical(other.0, other.1));
    }
}

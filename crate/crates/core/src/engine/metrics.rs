use num_rational::Ratio;

use crate::board::{GameState, Part};

/// Blocker-graph quantities relative to the builder's bipartition at one
/// position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetricsSnapshot {
    pub s: usize,
    pub k: usize,
    /// e(V¹, R) in the blocker's graph.
    pub e_v1_r: usize,
    pub e_v2_r: usize,
    /// Blocker edges with both ends in V.
    pub e_v: usize,
    pub r_size: usize,
    /// e(V, R) / |R|; zero when R is empty.
    pub d: Ratio<u64>,
    pub d1: Ratio<u64>,
    pub d2: Ratio<u64>,
    /// Edges between V¹ and V² not claimed by the blocker.
    pub saved: usize,
    /// Builder edges between V¹ and V²; every builder edge while bipartite.
    pub builder_cross: usize,
}

impl MetricsSnapshot {
    pub fn capture(state: &GameState) -> Self {
        let e_v1_r = state.blocker_edges_part_to_r(Part::One);
        let e_v2_r = state.blocker_edges_part_to_r(Part::Two);
        let v1 = state.part_set(Part::One);
        let v2 = state.part_set(Part::Two);
        let mut inside = [0usize; 3];
        let mut builder_cross = 0;
        for v in v1.iter() {
            inside[0] += state.blocker_adj(v).intersection_len(v1);
            inside[1] += state.blocker_adj(v).intersection_len(v2);
            builder_cross += state.builder_adj(v).intersection_len(v2);
        }
        for v in v2.iter() {
            inside[2] += state.blocker_adj(v).intersection_len(v2);
        }
        let e_v = inside[0] / 2 + inside[1] + inside[2] / 2;
        let r_size = state.untouched().len();
        let avg = |x: usize| {
            if r_size == 0 {
                Ratio::from_integer(0)
            } else {
                Ratio::new(x as u64, r_size as u64)
            }
        };
        Self {
            s: state.round,
            k: state.k,
            e_v1_r,
            e_v2_r,
            e_v,
            r_size,
            d: avg(e_v1_r + e_v2_r),
            d1: avg(e_v1_r),
            d2: avg(e_v2_r),
            saved: v1.len() * v2.len() - inside[1],
            builder_cross,
        }
    }

    pub fn d_f64(&self) -> f64 {
        ratio_f64(self.d)
    }

    pub fn d1_f64(&self) -> f64 {
        ratio_f64(self.d1)
    }

    pub fn d2_f64(&self) -> f64 {
        ratio_f64(self.d2)
    }
}

fn ratio_f64(r: Ratio<u64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::board::{GameConfig, Rules, Side};

    #[test]
    fn counts_on_a_small_position() {
        let cfg = GameConfig::maker_breaker(6, 2, Rules::Connected).unwrap();
        let mut s = GameState::new(cfg);
        s.apply_claim(Side::Builder, s.edge(0, 1)).unwrap();
        s.apply_claim(Side::Builder, s.edge(1, 2)).unwrap();
        // V¹ = {0, 2}, V² = {1}, R = {3, 4, 5}
        s.apply_claim(Side::Blocker, s.edge(0, 2)).unwrap();
        s.apply_claim(Side::Blocker, s.edge(0, 3)).unwrap();
        s.apply_claim(Side::Blocker, s.edge(1, 4)).unwrap();
        s.apply_claim(Side::Blocker, s.edge(2, 4)).unwrap();
        let m = MetricsSnapshot::capture(&s);
        assert_eq!((m.e_v1_r, m.e_v2_r, m.e_v, m.r_size), (2, 1, 1, 3));
        assert_eq!(m.d, Ratio::new(1, 1));
        assert_eq!(m.d1, Ratio::new(2, 3));
        assert_eq!(m.saved, 2);
        assert_eq!(m.builder_cross, 2);
    }
}

//! Graphs with prescribed degrees.

/// Havel–Hakimi: a simple graph with the given degree sequence, if one
/// exists.
pub fn havel_hakimi(degrees: &[usize]) -> Option<Vec<(usize, usize)>> {
    let mut left: Vec<(usize, usize)> = degrees.iter().copied().zip(0..).collect();
    let mut edges = Vec::new();
    loop {
        left.sort_unstable_by(|a, b| b.cmp(a));
        let (d, v) = left[0];
        if d == 0 {
            return Some(edges);
        }
        if d >= left.len() {
            return None;
        }
        left[0].0 = 0;
        for slot in left.iter_mut().skip(1).take(d) {
            if slot.0 == 0 {
                return None;
            }
            slot.0 -= 1;
            edges.push((v.min(slot.1), v.max(slot.1)));
        }
    }
}

/// A graph on `m` vertices where every vertex has degree `d` except
/// possibly the last, which has `d + 1` when `m·d` is odd.
pub fn realize_near_regular(m: usize, d: usize) -> Option<Vec<(usize, usize)>> {
    if m == 0 {
        return Some(Vec::new());
    }
    let mut degrees = vec![d; m];
    if (m * d) % 2 == 1 {
        degrees[m - 1] += 1;
    }
    havel_hakimi(&degrees)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odd_sum_gets_one_heavier_vertex() {
        let edges = realize_near_regular(5, 3).unwrap();
        assert_eq!(edges.len(), 8);
        let mut deg = [0; 5];
        for (u, v) in edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        assert_eq!(deg, [3, 3, 3, 3, 4]);
    }

    #[test]
    fn impossible_sequence() {
        assert!(havel_hakimi(&[3, 3, 1, 1]).is_none());
        assert!(havel_hakimi(&[4, 1, 1, 1]).is_none());
    }
}

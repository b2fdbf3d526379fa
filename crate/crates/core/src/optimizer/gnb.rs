//! Labelled Breaker graphs left over when the hub-and-leaves Maker loses,
//! their minimal edge counts and the exhaustive minimisation of
//! edges per Maker edge.

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::realize::realize_near_regular;
use super::OptimizerError;

/// Largest n for which [`minimize_f`] enumerates every shape.
pub const MAX_ENUM_N: usize = 15;

/// Shape of a labelled graph: `s + 1` hubs, leaf-set sizes `a[0..=s]`, and
/// the untouched vertices split into `r1` fully joined and `r2` degree-bound
/// ones.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GnbStructure {
    pub s: usize,
    pub a: Vec<usize>,
    pub r1: usize,
    pub r2: usize,
}

impl GnbStructure {
    pub fn leaves(&self) -> usize {
        self.a.iter().sum()
    }

    pub fn r(&self) -> usize {
        self.r1 + self.r2
    }

    /// Denominator of f: leaves plus later hubs.
    pub fn maker_edges(&self) -> usize {
        self.leaves() + self.s
    }

    pub fn check(&self, n: usize) -> Result<(), OptimizerError> {
        if self.a.len() != self.s + 1 {
            return Err(OptimizerError::Inconsistent(format!(
                "{} leaf sets for s = {}",
                self.a.len(),
                self.s
            )));
        }
        if self.a.contains(&0) {
            return Err(OptimizerError::Inconsistent("empty leaf set".into()));
        }
        let total = self.s + 1 + self.leaves() + self.r();
        if total != n {
            return Err(OptimizerError::Inconsistent(format!(
                "shape covers {total} vertices, board has {n}"
            )));
        }
        Ok(())
    }
}

fn choose2(x: usize) -> u64 {
    (x as u64) * (x.saturating_sub(1) as u64) / 2
}

/// Fewest edges inside R meeting the degree floor `d` on `r2` vertices,
/// with `R₁` available as spare neighbours.
fn r2_block_edges(r2: usize, d: i64) -> u64 {
    if d <= 0 || r2 == 0 {
        return 0;
    }
    let d = d as u64;
    let r2 = r2 as u64;
    if d < r2 {
        (r2 * d).div_ceil(2)
    } else {
        r2 * (r2 - 1) / 2 + r2 * (d - (r2 - 1))
    }
}

/// Minimal e(G) over graphs of this shape.
pub fn min_edges(g: &GnbStructure, n: usize, b: usize) -> Result<u64, OptimizerError> {
    g.check(n)?;
    let leaves = g.leaves();
    let r = g.r();
    let d = r as i64 - b as i64 - 1;
    let ordered: u64 = g.a.iter().enumerate().map(|(j, &aj)| (j * aj) as u64).sum();
    Ok(choose2(g.s + 1)
        + choose2(leaves)
        + ((g.s + 1) * r) as u64
        + ordered
        + (g.r1 * leaves) as u64
        + r2_block_edges(g.r2, d))
}

pub fn f_value(g: &GnbStructure, n: usize, b: usize) -> Result<Ratio<u64>, OptimizerError> {
    Ok(Ratio::new(min_edges(g, n, b)?, g.maker_edges() as u64))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Minimum {
    pub n: usize,
    pub b: usize,
    pub m: Ratio<u64>,
    /// Every shape attaining `m`, sorted.
    pub argmins: Vec<GnbStructure>,
}

fn compositions(total: usize, parts: usize, out: &mut Vec<Vec<usize>>, cur: &mut Vec<usize>) {
    if parts == 0 {
        if total == 0 {
            out.push(cur.clone());
        }
        return;
    }
    let max = total.saturating_sub(parts - 1);
    for x in 1..=max {
        cur.push(x);
        compositions(total - x, parts - 1, out, cur);
        cur.pop();
    }
}

fn minimum_for_s(n: usize, b: usize, s: usize) -> Option<(Ratio<u64>, Vec<GnbStructure>)> {
    let mut best: Option<(Ratio<u64>, Vec<GnbStructure>)> = None;
    for leaves in (s + 1)..=(n - s - 1) {
        let r = n - s - 1 - leaves;
        let mut comps = Vec::new();
        compositions(leaves, s + 1, &mut comps, &mut Vec::new());
        for a in comps {
            for r1 in 0..=r {
                let g = GnbStructure {
                    s,
                    a: a.clone(),
                    r1,
                    r2: r - r1,
                };
                let f = f_value(&g, n, b).expect("enumerated shapes are consistent");
                match &mut best {
                    Some((m, list)) if f == *m => list.push(g),
                    Some((m, _)) if f > *m => {}
                    _ => best = Some((f, vec![g])),
                }
            }
        }
    }
    best
}

/// Exhaustive minimum of f over all shapes on n vertices.
pub fn minimize_f(n: usize, b: usize) -> Result<Minimum, OptimizerError> {
    if n > MAX_ENUM_N {
        return Err(OptimizerError::Capacity { n, limit: MAX_ENUM_N });
    }
    if n < 2 {
        return Err(OptimizerError::Inconsistent("need at least one hub and one leaf".into()));
    }
    let per_s: Vec<_> = (0..=(n - 2) / 2)
        .into_par_iter()
        .filter_map(|s| minimum_for_s(n, b, s))
        .collect();
    let m = per_s.iter().map(|(m, _)| *m).min().expect("s = 0 always has shapes");
    let mut argmins: Vec<GnbStructure> = per_s
        .into_iter()
        .filter(|(x, _)| *x == m)
        .flat_map(|(_, list)| list)
        .collect();
    argmins.sort();
    Ok(Minimum { n, b, m, argmins })
}

/// Hub vertices and their leaf sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GnbLabels {
    pub v: Vec<usize>,
    pub a: Vec<Vec<usize>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Clause {
    /// Hubs distinct.
    A,
    /// Leaf sets disjoint, nonempty, hub-free.
    B,
    /// Required edges present.
    C,
    /// Untouched vertices fully joined or of large degree inside R.
    D,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Membership {
    pub violated: Option<(Clause, String)>,
}

impl Membership {
    pub fn is_member(&self) -> bool {
        self.violated.is_none()
    }

    fn fail(clause: Clause, detail: String) -> Self {
        Self {
            violated: Some((clause, detail)),
        }
    }
}

/// Checks the four clauses in order and reports the first that fails.
pub fn gnb_membership(n: usize, b: usize, edges: &[(usize, usize)], labels: &GnbLabels) -> Membership {
    let mut adj = vec![vec![false; n]; n];
    for &(u, v) in edges {
        if u < n && v < n && u != v {
            adj[u][v] = true;
            adj[v][u] = true;
        }
    }
    let has = |u: usize, v: usize| adj[u][v];

    let mut is_hub = vec![false; n];
    for &v in &labels.v {
        if v >= n || is_hub[v] {
            return Membership::fail(Clause::A, format!("hub {v} repeated or out of range"));
        }
        is_hub[v] = true;
    }

    if labels.a.len() != labels.v.len() {
        return Membership::fail(Clause::B, "one leaf set per hub required".into());
    }
    let mut owner: Vec<Option<usize>> = vec![None; n];
    for (j, set) in labels.a.iter().enumerate() {
        if set.is_empty() {
            return Membership::fail(Clause::B, format!("leaf set {j} is empty"));
        }
        for &x in set {
            if x >= n || is_hub[x] || owner[x].is_some() {
                return Membership::fail(Clause::B, format!("leaf {x} in set {j} clashes"));
            }
            owner[x] = Some(j);
        }
    }

    let r: Vec<usize> = (0..n).filter(|&x| !is_hub[x] && owner[x].is_none()).collect();
    let leaves: Vec<usize> = (0..n).filter(|&x| owner[x].is_some()).collect();
    let missing = |u: usize, v: usize| Membership::fail(Clause::C, format!("edge {u}-{v} missing"));
    for (i, &u) in labels.v.iter().enumerate() {
        for &v in &labels.v[i + 1..] {
            if !has(u, v) {
                return missing(u, v);
            }
        }
    }
    for (i, &u) in leaves.iter().enumerate() {
        for &v in &leaves[i + 1..] {
            if !has(u, v) {
                return missing(u, v);
            }
        }
    }
    for &u in &labels.v {
        for &y in &r {
            if !has(u, y) {
                return missing(u, y);
            }
        }
    }
    for (i, &u) in labels.v.iter().enumerate() {
        for set in &labels.a[i + 1..] {
            for &x in set {
                if !has(u, x) {
                    return missing(u, x);
                }
            }
        }
    }

    let floor = r.len() as i64 - b as i64 - 1;
    for &y in &r {
        let joined = (0..n).filter(|&x| is_hub[x] || owner[x].is_some()).all(|x| has(x, y));
        let inner = r.iter().filter(|&&z| has(y, z)).count() as i64;
        if !joined && inner < floor {
            return Membership::fail(
                Clause::D,
                format!("vertex {y} has {inner} neighbours in R, needs {floor}"),
            );
        }
    }
    Membership { violated: None }
}

/// A graph of the given shape with exactly [`min_edges`] edges. Hubs are
/// 0..=s, then the leaf sets in order, then R₁, then R₂.
pub fn build_min_graph(
    g: &GnbStructure,
    n: usize,
    b: usize,
) -> Result<(Vec<(usize, usize)>, GnbLabels), OptimizerError> {
    g.check(n)?;
    let v: Vec<usize> = (0..=g.s).collect();
    let mut next = g.s + 1;
    let mut a = Vec::new();
    for &size in &g.a {
        a.push((next..next + size).collect::<Vec<_>>());
        next += size;
    }
    let leaves: Vec<usize> = a.iter().flatten().copied().collect();
    let r1: Vec<usize> = (next..next + g.r1).collect();
    let r2: Vec<usize> = (next + g.r1..n).collect();
    let r: Vec<usize> = r1.iter().chain(&r2).copied().collect();

    let mut edges = Vec::new();
    for (i, &x) in v.iter().enumerate() {
        edges.extend(v[i + 1..].iter().map(|&y| (x, y)));
        edges.extend(r.iter().map(|&y| (x, y)));
        for set in &a[i + 1..] {
            edges.extend(set.iter().map(|&y| (x, y)));
        }
    }
    for (i, &x) in leaves.iter().enumerate() {
        edges.extend(leaves[i + 1..].iter().map(|&y| (x, y)));
    }
    for &y in &r1 {
        edges.extend(leaves.iter().map(|&x| (x, y)));
    }

    let d = r.len() as i64 - b as i64 - 1;
    if d > 0 && !r2.is_empty() {
        let d = d as usize;
        if d < r2.len() {
            let block = realize_near_regular(r2.len(), d).ok_or_else(|| {
                OptimizerError::Inconsistent(format!("no near-{d}-regular graph on {}", r2.len()))
            })?;
            edges.extend(block.into_iter().map(|(x, y)| (r2[x], r2[y])));
        } else {
            for (i, &x) in r2.iter().enumerate() {
                edges.extend(r2[i + 1..].iter().map(|&y| (x, y)));
                edges.extend(r1.iter().take(d + 1 - r2.len()).map(|&y| (x, y)));
            }
        }
    }
    Ok((edges, GnbLabels { v, a }))
}

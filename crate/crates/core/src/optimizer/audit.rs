//! Numeric check of the explicit inequalities behind the connected-game
//! Breaker bias `b = ⌈(n - εn)/2⌉`.
//!
//! Leading-order rows divide both sides by the top power of n and put
//! round indices at their extreme ratio; finite rows use a concrete n.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AuditMode {
    LeadingOrder,
    Finite,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AuditRow {
    pub name: String,
    pub mode: AuditMode,
    pub lhs: f64,
    pub relation: String,
    pub rhs: f64,
    pub holds: bool,
    /// Set when a row holds only vacuously or reads differently than stated.
    pub flag: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    pub epsilon: f64,
    pub n: Option<usize>,
    pub rows: Vec<AuditRow>,
}

impl AuditReport {
    pub fn row(&self, name: &str, mode: AuditMode) -> Option<&AuditRow> {
        self.rows.iter().find(|r| r.name == name && r.mode == mode)
    }
}

fn row(name: &str, mode: AuditMode, lhs: f64, relation: &str, rhs: f64) -> AuditRow {
    let holds = match relation {
        ">" => lhs > rhs,
        ">=" => lhs >= rhs,
        "<" => lhs < rhs,
        "<=" => lhs <= rhs,
        _ => unreachable!("unknown relation {relation}"),
    };
    AuditRow {
        name: name.into(),
        mode,
        lhs,
        relation: relation.into(),
        rhs,
        holds,
        flag: None,
    }
}

/// Rounding slack so that values which are integers in exact arithmetic
/// are not pushed across by binary representation error.
const SLACK: f64 = 1e-9;

/// Breaker's bias for the given n and ε.
pub fn breaker_bias(n: usize, eps: f64) -> usize {
    ((n as f64 - eps * n as f64) / 2.0 - SLACK).ceil() as usize
}

/// Upper bound on saved edges at the end of the game.
pub fn saved_edge_budget(n: usize, eps: f64) -> i64 {
    let n = n as f64;
    ((eps * n * n - n) / 2.0 + SLACK).floor() as i64
}

/// Factors of the final saved-edge product, leading order. With
/// `literal_e`, the first term of each factor uses √e (Euler's e).
pub fn final_factors(eps: f64, literal_e: bool) -> (f64, f64) {
    let se = eps.sqrt();
    let head = 2.0 / 3.0 - if literal_e { std::f64::consts::E.sqrt() } else { se };
    (
        head / 8.0 - 1.5 * se - 1.25 * eps,
        head / 4.0 - eps / 2.0 - 1.5 * se,
    )
}

pub fn breaker_constant_audit(eps: f64, n: Option<usize>) -> AuditReport {
    use AuditMode::*;
    // Saved-edge bound: the contradiction b < ... ≤ ⌈(n - εn)/2⌉ at t = n - 2.
    let mut rows = vec![row("saved-edges/bias-bound", LeadingOrder, (1.0 - eps) / 2.0, "<=", (1.0 - eps) / 2.0)];

    // Average degree upper bound, correction term at s = 2n/3.
    rows.push(row("avg-degree/upper-correction", LeadingOrder, (1.0 + eps) * 1.5, "<", 4.0));
    // Average degree lower bound holds for s/n < 4/5.
    rows.push(row("avg-degree/lower-range", LeadingOrder, 2.0 / 3.0, "<", 0.8));

    // Size lemma: per-round increment of d_s, and the saved-edge sum.
    rows.push(row("size-lemma/degree-step", LeadingOrder, (1.0 - eps) / 2.0 * 3.0, "<=", 1.5));
    rows.push(row("size-lemma/sum", LeadingOrder, 9.0 * eps / 8.0, ">", eps / 2.0));
    rows.push(row(
        "size-lemma/sum-expansion",
        LeadingOrder,
        1.5 * eps - 0.75 * eps / 2.0,
        ">=",
        9.0 * eps / 8.0,
    ));

    // Late win: (t + 2 + 4εn)/2 < (1 - ε)n/2 for t < 2n/3.
    rows.push(row("late-win", LeadingOrder, (2.0 / 3.0 + 4.0 * eps) / 2.0, "<", (1.0 - eps) / 2.0));

    let (f1, f2) = final_factors(eps, false);
    let mut r = row("final/rounds-factor", LeadingOrder, f1, ">", 0.0);
    if f1 < 0.0 {
        r.flag = Some("negative: the lower bound on rounds is vacuous".into());
    }
    rows.push(r);
    let mut r = row("final/saved-per-round-factor", LeadingOrder, f2, ">", 0.0);
    if f2 < 0.0 {
        r.flag = Some("negative: the per-round saving bound is vacuous".into());
    }
    rows.push(r);
    let mut r = row("final/product", LeadingOrder, f1 * f2, ">", eps);
    if f1 < 0.0 || f2 < 0.0 {
        r.flag = Some("product of two bounds of which at least one is negative".into());
    }
    rows.push(r);
    let (g1, g2) = final_factors(eps, true);
    let mut r = row("final/product-literal-sqrt-e", LeadingOrder, g1 * g2, ">", eps);
    r.flag = Some(format!("factors {g1:.6} and {g2:.6} with sqrt(e) read literally"));
    rows.push(r);

    if let Some(n) = n {
        rows.extend(finite_rows(eps, n));
    }
    AuditReport { epsilon: eps, n, rows }
}

fn finite_rows(eps: f64, n: usize) -> Vec<AuditRow> {
    use AuditMode::Finite;
    let nf = n as f64;
    let se = eps.sqrt();
    let b = breaker_bias(n, eps) as f64;
    let mut rows = Vec::new();

    let mut r = row("saved-edges/budget", Finite, saved_edge_budget(n, eps) as f64, ">=", 0.0);
    r.flag = Some(format!("floor((eps n^2 - n)/2) at n = {n}"));
    rows.push(r);
    let lhs = ((nf * nf - eps * nf * nf) - (nf - 2.0)) / (2.0 * (nf - 1.0));
    rows.push(row("saved-edges/bias-bound", Finite, lhs, "<=", b));

    let s_max = (2 * n) / 3;
    let worst = (1..=s_max)
        .filter(|&s| n > s + 1)
        .map(|s| {
            let s = s as f64;
            (3.0 * s - nf + eps * nf) / (2.0 * (nf - s - 1.0))
        })
        .fold(f64::NEG_INFINITY, f64::max);
    rows.push(row("avg-degree/upper-correction", Finite, worst, "<", 4.0));

    let worst_step = (1..=s_max)
        .filter(|&s| n > s + 2)
        .map(|s| (b + 2.0) / (nf - s as f64 - 2.0))
        .fold(f64::NEG_INFINITY, f64::max);
    rows.push(row("size-lemma/degree-step", Finite, worst_step, "<=", 1.5));

    let k = (se * nf).floor();
    let sum = (se * nf + 1.0).floor() * (1.5 * se * nf - 2.0) - 0.75 * (k + 1.0) * k / 2.0;
    rows.push(row("size-lemma/sum-expansion", Finite, sum, ">=", 9.0 * eps * nf * nf / 8.0 - 3.0 * se * nf));
    rows.push(row(
        "size-lemma/sum",
        Finite,
        9.0 * eps * nf * nf / 8.0 - 3.0 * se * nf,
        ">",
        (eps * nf * nf - nf) / 2.0,
    ));

    let t = (2.0 * nf / 3.0).ceil() - 1.0;
    rows.push(row("late-win", Finite, (t + 2.0 + 4.0 * eps * nf) / 2.0, "<", (1.0 - eps) * nf / 2.0));

    let s1 = ((2.0 / 3.0 - se) * nf / 2.0).floor();
    let rounds = s1 / 4.0 - (1.5 * se + 1.25 * eps) * nf - 2.0;
    let per_round = s1 / 2.0 - (eps + 3.0 * se) * nf / 2.0 - 6.0;
    let mut r = row("final/rounds-factor", Finite, rounds, ">", 0.0);
    if rounds < 0.0 {
        r.flag = Some("negative: the lower bound on rounds is vacuous".into());
    }
    rows.push(r);
    let mut r = row("final/saved-per-round-factor", Finite, per_round, ">", 0.0);
    if per_round < 0.0 {
        r.flag = Some("negative: the per-round saving bound is vacuous".into());
    }
    rows.push(r);
    rows
}

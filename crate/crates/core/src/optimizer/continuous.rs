//! Limit-regime lower bounds on b/n for the hub-and-leaves Maker, per
//! regime of |R| and s, each in closed form and by a numeric search.
//!
//! ρ = |R|/n throughout. Regimes: `bound-r` has R inside the degree-bound
//! class, split by whether |R| ≤ b + 1 (`small-r`) or not (`large-r`);
//! `joined-r` has R fully joined to the rest.

use serde::{Deserialize, Serialize};

pub const NUMERIC_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CaseValue {
    pub case: String,
    pub regime: String,
    /// What the values measure: the bound on b/n, or the minimising ρ.
    pub quantity: String,
    pub closed_form: f64,
    pub numeric: f64,
    pub note: Option<String>,
}

impl CaseValue {
    pub fn agrees(&self) -> bool {
        (self.closed_form - self.numeric).abs() <= NUMERIC_TOL
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContinuousReport {
    pub cases: Vec<CaseValue>,
    pub overall: f64,
    pub overall_numeric: f64,
    /// Earlier bounds, for comparison.
    pub comparisons: Vec<(String, f64)>,
}

/// Golden-section search, then for smooth minima a refinement by bisection
/// on the sign of a central-difference slope. Returns (argmin, min).
pub fn minimize(f: impl Fn(f64) -> f64, lo: f64, hi: f64) -> (f64, f64) {
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - phi * (b - a);
    let mut d = a + phi * (b - a);
    while b - a > 1e-13 {
        if f(c) <= f(d) {
            b = d;
        } else {
            a = c;
        }
        c = b - phi * (b - a);
        d = a + phi * (b - a);
    }
    let golden = 0.5 * (a + b);
    let h = 1e-7;
    let slope = |x: f64| (f(x + h) - f(x - h)) / (2.0 * h);
    let (mut l, mut r) = (golden - 1e-5, golden + 1e-5);
    let smooth = l > lo && r < hi && slope(l) < 0.0 && slope(r) > 0.0 && slope(r) - slope(l) < 1e-3;
    let x = if smooth {
        for _ in 0..200 {
            let m = 0.5 * (l + r);
            if slope(m) < 0.0 {
                l = m;
            } else {
                r = m;
            }
        }
        0.5 * (l + r)
    } else {
        [lo, hi, golden]
            .into_iter()
            .min_by(|&x, &y| f(x).total_cmp(&f(y)))
            .expect("three candidates")
    };
    (x, f(x))
}

/// Root of `f` on a sign-changing bracket.
pub fn bisect(f: impl Fn(f64) -> f64, lo: f64, hi: f64) -> f64 {
    let (mut l, mut r) = (lo, hi);
    let left_neg = f(l) < 0.0;
    for _ in 0..200 {
        let m = 0.5 * (l + r);
        if (f(m) < 0.0) == left_neg {
            l = m;
        } else {
            r = m;
        }
    }
    0.5 * (l + r)
}

fn case(case: &str, regime: &str, quantity: &str, closed_form: f64, numeric: f64) -> CaseValue {
    CaseValue {
        case: case.into(),
        regime: regime.into(),
        quantity: quantity.into(),
        closed_form,
        numeric,
        note: None,
    }
}

pub fn continuous_case_minimum() -> ContinuousReport {
    let mut cases = Vec::new();

    // bound-r / small-r: β ≥ ρ together with the averaged edge count.
    let (_, v) = minimize(|r| r.max((1.0 - r) / 2.0), 0.0, 1.0);
    cases.push(case("bound-r/small-r", "s=0", "b/n", 1.0 / 3.0, v));
    let g = |r: f64| (2.0 - 2.0 * r - r * r) / (6.0 * (1.0 - r));
    let (_, v) = minimize(|r| r.max(g(r)), 0.0, 0.99);
    let crossing = (4.0 - 6f64.sqrt()) / 5.0;
    let mut c = case("bound-r/small-r", "s>=1", "b/n", crossing, v);
    c.note = Some(format!(
        "root of 5x^2 - 8x + 2 by bisection: {:.12}",
        bisect(|x| 5.0 * x * x - 8.0 * x + 2.0, 0.0, 0.5)
    ));
    cases.push(c);

    // bound-r / large-r, s = 0: β ≥ (1 - 2ρ + 2ρ²)/(2 - ρ) with β < ρ,
    // feasible for ρ in (1/3, 1).
    let h0 = |r: f64| (1.0 - 2.0 * r + 2.0 * r * r) / (2.0 - r);
    let (arg, val) = minimize(h0, 1.0 / 3.0, 1.0);
    let mut c = case("bound-r/large-r", "s=0", "argmin rho", 2.0 - 2.5f64.sqrt(), arg);
    c.note = Some("the bound itself is the next row".into());
    cases.push(c);
    cases.push(case(
        "bound-r/large-r",
        "s=0",
        "b/n",
        2.0 * 10f64.sqrt() - 6.0,
        val,
    ));

    // bound-r / large-r, s ≥ 1: β ≥ h(ρ) with β ≤ ρ; h(ρ) ≤ ρ exactly on
    // [(4 - √6)/5, (4 + √6)/5].
    let h1 = |r: f64| (2.0 - 2.0 * r + 2.0 * r * r) / (6.0 - 3.0 * r);
    let lo = bisect(|r| h1(r) - r, 0.0, 0.5);
    let (_, v) = minimize(h1, lo, 1.0);
    cases.push(case("bound-r/large-r", "s>=1", "b/n", crossing, v));

    // joined-r.
    let (_, v) = minimize(|r| (1.0 + r) / 2.0, 0.0, 1.0);
    cases.push(case("joined-r", "s=0", "b/n", 0.5, v));
    // β ≥ 1 - 2α and α ≤ (1 - β)/7 meet at the fixed point of
    // β = 1 - 2(1 - β)/7.
    let v = bisect(|beta| beta - (1.0 - 2.0 * (1.0 - beta) / 7.0), 0.0, 2.0);
    cases.push(case("joined-r", "s>=1", "b/n", 1.0, v));

    let bounds = cases.iter().filter(|c| c.quantity == "b/n");
    let overall = bounds.clone().map(|c| c.closed_form).fold(f64::INFINITY, f64::min);
    let overall_numeric = bounds.map(|c| c.numeric).fold(f64::INFINITY, f64::min);
    ContinuousReport {
        cases,
        overall,
        overall_numeric,
        comparisons: vec![
            ("1 - 1/sqrt(2)".into(), 1.0 - 1.0 / 2f64.sqrt()),
            ("1/(4 ln 2)".into(), 1.0 / (4.0 * 2f64.ln())),
        ],
    }
}

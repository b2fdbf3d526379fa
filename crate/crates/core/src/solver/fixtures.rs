//! Frozen solver results: winners per (n, b, variant, rules) and the
//! resulting threshold biases. Serialized with sorted keys so regenerated
//! files compare byte for byte.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{solve, SolverError, SolverOptions, SOLVER_VERSION};
use crate::board::{GameConfig, Rules, Variant, Winner};

/// Board families covered by the fixture file.
pub const FIXTURE_FAMILIES: &[(Variant, Rules, &[usize])] = &[
    (Variant::MakerBreaker, Rules::Free, &[3, 4, 5, 6]),
    (Variant::MakerBreaker, Rules::Connected, &[3, 4, 5, 6]),
    (Variant::ClientWaiter, Rules::Connected, &[3, 4, 5]),
    (Variant::ClientWaiter, Rules::Free, &[3, 4, 5]),
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fixtures {
    pub solver_version: String,
    /// `"n=5,b=2,maker-breaker,free"` → winner.
    pub values: BTreeMap<String, Winner>,
    /// `"n=5,maker-breaker,free"` → smallest blocker-winning bias.
    pub thresholds: BTreeMap<String, usize>,
}

pub fn value_key(n: usize, b: usize, variant: Variant, rules: Rules) -> String {
    format!("n={n},b={b},{variant},{rules}")
}

pub fn threshold_key(n: usize, variant: Variant, rules: Rules) -> String {
    format!("n={n},{variant},{rules}")
}

impl Fixtures {
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("fixtures serialize");
        text.push('\n');
        text
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn threshold(&self, n: usize, variant: Variant, rules: Rules) -> Option<usize> {
        self.thresholds.get(&threshold_key(n, variant, rules)).copied()
    }

    pub fn value(&self, n: usize, b: usize, variant: Variant, rules: Rules) -> Option<Winner> {
        self.values.get(&value_key(n, b, variant, rules)).copied()
    }
}

/// Solves every family, walking b upward until the blocker wins; all values
/// met on the way are recorded.
pub fn generate_fixtures(opts: SolverOptions) -> Result<Fixtures, SolverError> {
    let mut values = BTreeMap::new();
    let mut thresholds = BTreeMap::new();
    for &(variant, rules, sizes) in FIXTURE_FAMILIES {
        for &n in sizes {
            let mut b = match variant {
                Variant::MakerBreaker => 1,
                Variant::ClientWaiter => 0,
            };
            loop {
                let cfg = GameConfig::new(n, b, variant, rules, 0)
                    .map_err(|e| SolverError::Config(e.to_string()))?;
                let winner = solve(&cfg, opts)?.winner;
                values.insert(value_key(n, b, variant, rules), winner);
                if winner == Winner::Blocker {
                    thresholds.insert(threshold_key(n, variant, rules), b);
                    break;
                }
                b += 1;
            }
        }
    }
    Ok(Fixtures {
        solver_version: SOLVER_VERSION.to_string(),
        values,
        thresholds,
    })
}

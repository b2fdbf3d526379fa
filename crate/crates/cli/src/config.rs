//! Run configuration: a JSON file mirrors the command-line flags, and flags
//! given on the command line win.

use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use oddcycle_core::{GameConfig, Rules, Variant};

use crate::CliError;

/// Tolerance for fractional biases that are integers in exact arithmetic.
const ROUND_SLACK: f64 = 1e-9;

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Rounding {
    #[default]
    Ceil,
    Floor,
    Nearest,
}

impl Rounding {
    pub fn apply(self, x: f64) -> usize {
        let r = match self {
            Rounding::Ceil => (x - ROUND_SLACK).ceil(),
            Rounding::Floor => (x + ROUND_SLACK).floor(),
            Rounding::Nearest => x.round(),
        };
        r.max(0.0) as usize
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VariantArg {
    #[value(alias = "maker-breaker")]
    #[serde(alias = "maker-breaker")]
    Mb,
    #[value(alias = "client-waiter")]
    #[serde(alias = "client-waiter")]
    Cw,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RulesArg {
    Free,
    Connected,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Mb => Variant::MakerBreaker,
            VariantArg::Cw => Variant::ClientWaiter,
        }
    }
}

impl From<RulesArg> for Rules {
    fn from(r: RulesArg) -> Self {
        match r {
            RulesArg::Free => Rules::Free,
            RulesArg::Connected => Rules::Connected,
        }
    }
}

/// Every field is optional so one file can serve several commands.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize, clap::Args)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// JSON file with defaults for any of these flags.
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
    #[arg(short, long)]
    pub n: Option<usize>,
    #[arg(short, long)]
    pub b: Option<usize>,
    /// Bias as a fraction of n, rounded with --round.
    #[arg(long, conflicts_with = "b")]
    pub bias_frac: Option<f64>,
    #[arg(long, value_enum)]
    pub round: Option<Rounding>,
    #[arg(long, value_enum)]
    pub variant: Option<VariantArg>,
    #[arg(long, value_enum)]
    pub rules: Option<RulesArg>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Stop at the first invariant violation.
    #[arg(long = "assert", num_args = 0..=1, default_missing_value = "true")]
    #[serde(rename = "assert")]
    pub assert_mode: Option<bool>,
    /// Solver capacity overrides, e.g. "mb=7,cw=6"; the
    /// ODDCYCLE_CAPACITY_OVERRIDE variable is read when absent.
    #[arg(long)]
    pub capacity: Option<String>,
}

impl RunConfig {
    /// Fills unset fields from the `--config` file, if one was given.
    pub fn merged(self) -> Result<Self, CliError> {
        let Some(path) = self.config.clone() else {
            return Ok(self);
        };
        let file = load_json::<RunConfig>(&path)?;
        Ok(Self {
            config: self.config,
            n: self.n.or(file.n),
            b: self.b.or(file.b),
            bias_frac: self.bias_frac.or(file.bias_frac),
            round: self.round.or(file.round),
            variant: self.variant.or(file.variant),
            rules: self.rules.or(file.rules),
            seed: self.seed.or(file.seed),
            assert_mode: self.assert_mode.or(file.assert_mode),
            capacity: self.capacity.or(file.capacity),
        })
    }

    pub fn n(&self) -> Result<usize, CliError> {
        self.n.ok_or_else(|| CliError::usage("missing --n"))
    }

    pub fn bias(&self) -> Result<usize, CliError> {
        let n = self.n()?;
        match (self.b, self.bias_frac) {
            (Some(b), None) => Ok(b),
            (None, Some(f)) if f.is_finite() && f >= 0.0 => Ok(self.round.unwrap_or_default().apply(f * n as f64)),
            (None, Some(f)) => Err(CliError::usage(format!("bad --bias-frac {f}"))),
            (Some(_), Some(_)) => Err(CliError::usage("give either --b or --bias-frac, not both")),
            (None, None) => Err(CliError::usage("missing --b or --bias-frac")),
        }
    }

    pub fn variant(&self) -> Variant {
        self.variant.unwrap_or(VariantArg::Mb).into()
    }

    pub fn rules(&self) -> Rules {
        self.rules.unwrap_or(RulesArg::Free).into()
    }

    pub fn assert_mode(&self) -> bool {
        self.assert_mode.unwrap_or(false)
    }

    pub fn game_config(&self) -> Result<GameConfig, CliError> {
        GameConfig::new(self.n()?, self.bias()?, self.variant(), self.rules(), self.seed.unwrap_or(0))
            .map_err(|e| CliError::usage(e.to_string()))
    }

    pub fn capacity_spec(&self) -> Option<String> {
        self.capacity
            .clone()
            .or_else(|| std::env::var("ODDCYCLE_CAPACITY_OVERRIDE").ok())
    }
}

pub fn load_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::usage(format!("cannot parse {}: {e}", path.display())))
}

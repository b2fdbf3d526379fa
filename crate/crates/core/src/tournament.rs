//! Many games between named strategies, with hooks, post-game checks and
//! aggregated reports.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::board::{EndReason, GameConfig, GameState, Rules, Variant, Winner};
use crate::engine::{play_from, EngineError, Hooks, MetricsSnapshot, Role, Transcript, Violation};
use crate::invariants::{post_game, ClientLemmas, DegreeRegularity, RoundMetrics, SavedMonotone};
use crate::strategies::{build_strategy, RegistryError};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TournamentConfig {
    /// n, b, variant and rules; game i uses seed `base.seed + i`.
    pub base: GameConfig,
    pub builders: Vec<String>,
    pub blockers: Vec<String>,
    /// Games per pairing.
    pub games: usize,
    pub assert_mode: bool,
    /// End-of-round bound on saved edges when breaker-connected loses.
    pub saved_budget: Option<usize>,
    #[serde(default)]
    pub keep_transcripts: bool,
}

#[derive(Debug, thiserror::Error)]
pub enum TournamentError {
    #[error(transparent)]
    Registry(#[from] RegistryError),
    #[error(transparent)]
    Engine(#[from] EngineError),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GameSummary {
    pub index: usize,
    pub builder: String,
    pub blocker: String,
    pub seed: u64,
    pub winner: Option<Winner>,
    pub reason: Option<EndReason>,
    pub rounds: usize,
    pub violations: Vec<Violation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub transcript: Option<Transcript>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RoundAggregate {
    pub s: usize,
    pub games: usize,
    pub mean_d: f64,
    pub mean_d1: f64,
    pub mean_d2: f64,
    pub mean_saved: f64,
    pub max_saved: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairingReport {
    pub builder: String,
    pub blocker: String,
    pub games: usize,
    pub builder_wins: usize,
    pub blocker_wins: usize,
    pub reasons: BTreeMap<String, usize>,
    pub mean_rounds: f64,
    pub violations: usize,
    pub rounds: Vec<RoundAggregate>,
}

impl PairingReport {
    pub fn label(&self) -> String {
        format!("{} vs {}", self.builder, self.blocker)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TournamentReport {
    pub config: TournamentConfig,
    pub pairings: Vec<PairingReport>,
    /// Games in index order; cut after the first violation in assert mode.
    pub games: Vec<GameSummary>,
    pub first_violation: Option<Violation>,
    /// Moves up to the first violation, for replay.
    pub failed_transcript: Option<Transcript>,
}

pub const CSV_HEADER: &str = "pairing,games,builder_wins,blocker_wins,mean_rounds,violations";

impl TournamentReport {
    pub fn total_violations(&self) -> usize {
        self.pairings.iter().map(|p| p.violations).sum()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for p in &self.pairings {
            out.push_str(&format!(
                "{},{},{},{},{:.3},{}\n",
                p.label(),
                p.games,
                p.builder_wins,
                p.blocker_wins,
                p.mean_rounds,
                p.violations
            ));
        }
        out
    }
}

fn builder_role(variant: Variant) -> Role {
    match variant {
        Variant::MakerBreaker => Role::Maker,
        Variant::ClientWaiter => Role::Client,
    }
}

fn blocker_role(variant: Variant) -> Role {
    match variant {
        Variant::MakerBreaker => Role::Breaker,
        Variant::ClientWaiter => Role::Waiter,
    }
}

fn hooks_for(cfg: &TournamentConfig, builder: &str, blocker: &str, metrics: &RoundMetrics) -> Hooks {
    let mut hooks = if cfg.assert_mode {
        Hooks::assert()
    } else {
        Hooks::observe()
    };
    hooks.push(Box::new(metrics.handle()));
    let base = cfg.base;
    if blocker == "breaker-connected" && base.rules == Rules::Connected {
        hooks.push(Box::new(DegreeRegularity::new()));
        hooks.push(Box::new(SavedMonotone::default()));
    }
    // Client's structural claims only hold below her threshold.
    if builder == "client-connected" && base.rules == Rules::Connected && base.b + 2 <= base.n.div_ceil(2) {
        hooks.push(Box::new(ClientLemmas));
    }
    hooks
}

fn post_checks(
    cfg: &TournamentConfig,
    builder: &str,
    blocker: &str,
    t: &Transcript,
    rounds: &[MetricsSnapshot],
) -> Vec<(String, String)> {
    let mut out = Vec::new();
    if blocker == "breaker-connected" {
        if let Some(budget) = cfg.saved_budget {
            if let Err(e) = post_game::breaker_loss(t, rounds, budget) {
                out.push(("post-game/breaker-loss".into(), e));
            }
        }
    }
    if builder == "maker-oc" && cfg.base.rules == Rules::Free {
        if let Err(e) = post_game::maker_oc_loss(t) {
            out.push(("post-game/maker-oc-loss".into(), e));
        }
    }
    out
}

struct Played {
    summary: GameSummary,
    snapshots: Vec<MetricsSnapshot>,
    partial: Option<Transcript>,
}

fn play_one(
    cfg: &TournamentConfig,
    index: usize,
    builder: &str,
    blocker: &str,
    game: usize,
) -> Result<Played, TournamentError> {
    let seed = cfg.base.seed.wrapping_add(game as u64);
    let config = cfg.base.with_seed(seed);
    let mut b = build_strategy(builder, builder_role(config.variant), seed.wrapping_mul(2))?;
    let mut w = build_strategy(blocker, blocker_role(config.variant), seed.wrapping_mul(2).wrapping_add(1))?;
    let metrics = RoundMetrics::new();
    let mut hooks = hooks_for(cfg, builder, blocker, &metrics);
    let mut state = GameState::new(config);
    let mut moves = Vec::new();
    let outcome = play_from(&mut state, &mut moves, b.as_mut(), w.as_mut(), &mut hooks);
    let transcript = Transcript::from_game(&state, moves);
    let mut violations = std::mem::take(&mut hooks.violations);
    let mut partial = None;
    match outcome {
        Ok(()) => {}
        Err(EngineError::InvariantViolation {
            s,
            k,
            hook,
            message,
            digest,
        }) => {
            violations.push(Violation {
                s,
                k,
                hook,
                message,
                digest,
            });
            partial = Some(transcript.clone());
        }
        Err(e) => return Err(e.into()),
    }
    let snapshots = metrics.snapshots();
    if partial.is_none() {
        for (hook, message) in post_checks(cfg, builder, blocker, &transcript, &snapshots) {
            violations.push(Violation {
                s: transcript.rounds(),
                k: 0,
                hook,
                message,
                digest: transcript.digest.clone(),
            });
            if cfg.assert_mode {
                partial = Some(transcript.clone());
                break;
            }
        }
    }
    let result = transcript.result;
    Ok(Played {
        summary: GameSummary {
            index,
            builder: builder.to_string(),
            blocker: blocker.to_string(),
            seed,
            winner: result.map(|r| r.winner),
            reason: result.map(|r| r.reason),
            rounds: transcript.rounds(),
            violations,
            transcript: cfg.keep_transcripts.then(|| transcript.clone()),
        },
        snapshots,
        partial,
    })
}

fn aggregate_rounds(all: &[&[MetricsSnapshot]]) -> Vec<RoundAggregate> {
    let mut by_round: BTreeMap<usize, Vec<&MetricsSnapshot>> = BTreeMap::new();
    for game in all {
        for m in game.iter() {
            by_round.entry(m.s).or_default().push(m);
        }
    }
    by_round
        .into_iter()
        .map(|(s, ms)| {
            let k = ms.len() as f64;
            let mean = |f: &dyn Fn(&MetricsSnapshot) -> f64| ms.iter().map(|m| f(m)).sum::<f64>() / k;
            RoundAggregate {
                s,
                games: ms.len(),
                mean_d: mean(&|m| m.d_f64()),
                mean_d1: mean(&|m| m.d1_f64()),
                mean_d2: mean(&|m| m.d2_f64()),
                mean_saved: mean(&|m| m.saved as f64),
                max_saved: ms.iter().map(|m| m.saved).max().unwrap_or(0),
            }
        })
        .collect()
}

/// Plays every builder against every blocker. Games run in parallel;
/// everything reported is ordered by game index.
pub fn run_tournament(cfg: &TournamentConfig) -> Result<TournamentReport, TournamentError> {
    cfg.base.validate().map_err(EngineError::from)?;
    let mut jobs = Vec::new();
    for builder in &cfg.builders {
        build_strategy(builder, builder_role(cfg.base.variant), 0)?;
        for blocker in &cfg.blockers {
            build_strategy(blocker, blocker_role(cfg.base.variant), 0)?;
            for game in 0..cfg.games {
                jobs.push((jobs.len(), builder.as_str(), blocker.as_str(), game));
            }
        }
    }

    // Lowest failing index so far; later games are skipped in assert mode.
    let cutoff = AtomicUsize::new(usize::MAX);
    let results: Vec<Option<Result<Played, TournamentError>>> = jobs
        .par_iter()
        .map(|&(index, builder, blocker, game)| {
            if cfg.assert_mode && index > cutoff.load(Ordering::Relaxed) {
                return None;
            }
            let r = play_one(cfg, index, builder, blocker, game);
            if cfg.assert_mode && matches!(&r, Ok(p) if !p.summary.violations.is_empty()) {
                cutoff.fetch_min(index, Ordering::Relaxed);
            }
            Some(r)
        })
        .collect();

    let mut played = Vec::new();
    for r in results.into_iter().flatten() {
        let p = r?;
        let stop = cfg.assert_mode && !p.summary.violations.is_empty();
        played.push(p);
        if stop {
            break;
        }
    }

    let mut pairings = Vec::new();
    for builder in &cfg.builders {
        for blocker in &cfg.blockers {
            let mine: Vec<&Played> = played
                .iter()
                .filter(|p| &p.summary.builder == builder && &p.summary.blocker == blocker)
                .collect();
            let mut reasons = BTreeMap::new();
            for p in &mine {
                if let Some(r) = p.summary.reason {
                    *reasons.entry(format!("{r:?}")).or_insert(0) += 1;
                }
            }
            let count = |w: Winner| mine.iter().filter(|p| p.summary.winner == Some(w)).count();
            let snaps: Vec<&[MetricsSnapshot]> = mine.iter().map(|p| p.snapshots.as_slice()).collect();
            pairings.push(PairingReport {
                builder: builder.clone(),
                blocker: blocker.clone(),
                games: mine.len(),
                builder_wins: count(Winner::Builder),
                blocker_wins: count(Winner::Blocker),
                reasons,
                mean_rounds: if mine.is_empty() {
                    0.0
                } else {
                    mine.iter().map(|p| p.summary.rounds as f64).sum::<f64>() / mine.len() as f64
                },
                violations: mine.iter().map(|p| p.summary.violations.len()).sum(),
                rounds: aggregate_rounds(&snaps),
            });
        }
    }

    let first_violation = played
        .iter()
        .find_map(|p| p.summary.violations.first().cloned());
    let failed_transcript = played.iter().find_map(|p| p.partial.clone());
    Ok(TournamentReport {
        config: cfg.clone(),
        pairings,
        games: played.into_iter().map(|p| p.summary).collect(),
        first_violation,
        failed_transcript,
    })
}

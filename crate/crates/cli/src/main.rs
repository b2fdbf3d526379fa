//! Command-line front end: games, tournaments, solver, verifier, optimizer,
//! audit and transcript replay.
//!
//! Exit codes: 0 success, 1 invariant violation / verification failure /
//! fixture or digest mismatch, 2 usage or input error.

mod config;
mod replay;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use oddcycle_core::engine::{play_from, EngineError, Hooks, InvariantHook, Role, Transcript};
use oddcycle_core::invariants::{ClientLemmas, DegreeRegularity, SavedMonotone};
use oddcycle_core::optimizer::{
    audit_text, breaker_constant_audit, continuous_case_minimum, minimize_f, OptimizerReport,
};
use oddcycle_core::solver::fixtures::{generate_fixtures, Fixtures};
use oddcycle_core::solver::{
    exact_threshold, solve, SolverLimits, SolverOptions, Verdict, VerifyOptions,
};
use oddcycle_core::strategies::{build_strategy, roles_of};
use oddcycle_core::tournament::{run_tournament, TournamentConfig};
use oddcycle_core::{GameConfig, GameState, Rules, Variant};

use config::RunConfig;

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, unreadable or malformed input, capacity refusals.
    Usage(String),
    /// The run completed and found a problem.
    Failed(String),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    fn code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Usage(_) => 2,
        }
    }
}

#[derive(Parser)]
#[command(name = "oddcycle", version, about = "Biased odd-cycle games on K_n")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Play one game and write its transcript.
    Play {
        #[command(flatten)]
        run: RunConfig,
        #[arg(long)]
        builder: String,
        #[arg(long)]
        blocker: String,
        /// Transcript path; printed to stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Play every builder against every blocker.
    Tournament {
        #[command(flatten)]
        run: RunConfig,
        #[arg(long, value_delimiter = ',', required = true)]
        builders: Vec<String>,
        #[arg(long, value_delimiter = ',', required = true)]
        blockers: Vec<String>,
        #[arg(long, default_value_t = 100)]
        games: usize,
        /// Bound on end-of-round saved edges in games breaker-connected loses.
        #[arg(long)]
        saved_budget: Option<usize>,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
        /// Also write every transcript into this directory.
        #[arg(long)]
        transcripts: Option<PathBuf>,
    },
    /// Exact winner for one bias, the threshold bias, or the fixture table.
    Solve {
        #[command(flatten)]
        run: RunConfig,
        #[arg(long)]
        threshold: bool,
        /// Reduce positions by vertex relabelling.
        #[arg(long)]
        canonical: bool,
        #[arg(long)]
        no_memo: bool,
        /// Regenerate all fixtures and write them here.
        #[arg(long, conflicts_with = "check")]
        write_fixtures: Option<PathBuf>,
        /// Regenerate all fixtures and compare with this file byte for byte.
        #[arg(long)]
        check: Option<PathBuf>,
    },
    /// Check a strategy against every opponent line.
    Verify {
        #[command(flatten)]
        run: RunConfig,
        #[arg(long)]
        strategy: String,
        /// Counterexample transcript path.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Limit-regime constants and exhaustive minima.
    Optimize {
        /// Exhaustive minima for n in this range, e.g. 3..=12 as "3-12".
        #[arg(long)]
        range: Option<String>,
        /// Only this bias in the exhaustive part; all 1..n otherwise.
        #[arg(short, long)]
        b: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Numeric check of the Breaker-side inequalities.
    Audit {
        #[arg(long, default_value_t = 0.06)]
        epsilon: f64,
        /// Add finite-n rows for this n.
        #[arg(short, long)]
        n: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Validate a transcript and print it round by round.
    Replay {
        path: PathBuf,
        #[arg(long)]
        quiet: bool,
    },
}

fn write_or_print(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn roles(variant: Variant) -> (Role, Role) {
    match variant {
        Variant::MakerBreaker => (Role::Maker, Role::Breaker),
        Variant::ClientWaiter => (Role::Client, Role::Waiter),
    }
}

fn solver_options(run: &RunConfig, canonical: bool, memo: bool) -> Result<SolverOptions, CliError> {
    let mut limits = SolverLimits::default();
    if let Some(spec) = run.capacity_spec() {
        limits = limits.with_overrides(&spec).map_err(|e| CliError::usage(e.to_string()))?;
    }
    Ok(SolverOptions {
        memo,
        canonical,
        limits,
    })
}

fn strategy_hooks(name: &str, cfg: &GameConfig) -> Vec<Box<dyn InvariantHook>> {
    let mut hooks: Vec<Box<dyn InvariantHook>> = Vec::new();
    if cfg.rules == Rules::Connected {
        if name == "breaker-connected" {
            hooks.push(Box::new(DegreeRegularity::new()));
            hooks.push(Box::new(SavedMonotone::default()));
        }
        if name == "client-connected" && cfg.b + 2 <= cfg.n.div_ceil(2) {
            hooks.push(Box::new(ClientLemmas));
        }
    }
    hooks
}

fn cmd_play(run: RunConfig, builder: &str, blocker: &str, out: Option<&Path>) -> Result<(), CliError> {
    let run = run.merged()?;
    let cfg = run.game_config()?;
    let (br, kr) = roles(cfg.variant);
    let usage = |e: oddcycle_core::strategies::RegistryError| CliError::usage(e.to_string());
    let mut b = build_strategy(builder, br, cfg.seed.wrapping_mul(2)).map_err(usage)?;
    let mut k = build_strategy(blocker, kr, cfg.seed.wrapping_mul(2).wrapping_add(1)).map_err(usage)?;
    let mut hooks = if run.assert_mode() {
        Hooks::assert()
    } else {
        Hooks::observe()
    };
    for h in strategy_hooks(builder, &cfg).into_iter().chain(strategy_hooks(blocker, &cfg)) {
        hooks.push(h);
    }
    let mut state = GameState::new(cfg);
    let mut moves = Vec::new();
    let outcome = play_from(&mut state, &mut moves, b.as_mut(), k.as_mut(), &mut hooks);
    let transcript = Transcript::from_game(&state, moves);
    write_or_print(out, &(transcript.to_json() + "\n"))?;
    for v in &hooks.violations {
        eprintln!("violation at ({}, {}) in {}: {}", v.s, v.k, v.hook, v.message);
    }
    match outcome {
        Ok(()) => {
            if let Some(r) = transcript.result {
                eprintln!("{:?} wins ({:?}) after {} rounds", r.winner, r.reason, transcript.rounds());
            }
            Ok(())
        }
        Err(e @ EngineError::InvariantViolation { .. }) => Err(CliError::Failed(e.to_string())),
        Err(e) => Err(CliError::Failed(e.to_string())),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_tournament(
    run: RunConfig,
    builders: Vec<String>,
    blockers: Vec<String>,
    games: usize,
    saved_budget: Option<usize>,
    csv: Option<&Path>,
    json: Option<&Path>,
    transcripts: Option<&Path>,
) -> Result<(), CliError> {
    let run = run.merged()?;
    let cfg = TournamentConfig {
        base: run.game_config()?,
        builders,
        blockers,
        games,
        assert_mode: run.assert_mode(),
        saved_budget,
        keep_transcripts: transcripts.is_some(),
    };
    let mut report = run_tournament(&cfg).map_err(|e| match e {
        oddcycle_core::tournament::TournamentError::Registry(e) => CliError::usage(e.to_string()),
        e => CliError::Failed(e.to_string()),
    })?;
    if let Some(dir) = transcripts {
        std::fs::create_dir_all(dir).map_err(|e| CliError::usage(format!("cannot create {}: {e}", dir.display())))?;
        for g in &mut report.games {
            if let Some(t) = g.transcript.take() {
                let name = format!("{:05}-{}-vs-{}.json", g.index, g.builder, g.blocker);
                write_or_print(Some(&dir.join(name)), &(t.to_json() + "\n"))?;
            }
        }
    }
    if let Some(path) = json {
        write_or_print(Some(path), &report.to_json())?;
    }
    match csv {
        Some(path) => write_or_print(Some(path), &report.to_csv())?,
        None if json.is_none() => print!("{}", report.to_csv()),
        None => {}
    }
    if let Some(v) = &report.first_violation {
        let msg = format!("violation in game at ({}, {}) by {}: {} (state {})", v.s, v.k, v.hook, v.message, v.digest);
        if cfg.assert_mode {
            return Err(CliError::Failed(msg));
        }
        eprintln!("{msg}");
    }
    Ok(())
}

fn cmd_solve(
    run: RunConfig,
    threshold: bool,
    canonical: bool,
    memo: bool,
    write: Option<&Path>,
    check: Option<&Path>,
) -> Result<(), CliError> {
    let run = run.merged()?;
    let opts = solver_options(&run, canonical, memo)?;
    let solver_err = |e: oddcycle_core::solver::SolverError| CliError::usage(e.to_string());
    if write.is_some() || check.is_some() {
        let text = generate_fixtures(opts).map_err(solver_err)?.to_json();
        if let Some(path) = write {
            return write_or_print(Some(path), &text);
        }
        let path = check.expect("one of the two is set");
        let frozen = std::fs::read_to_string(path).map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
        if frozen != text {
            let detail = match Fixtures::from_json(&frozen) {
                Ok(_) => "values differ",
                Err(_) => "file does not parse",
            };
            return Err(CliError::Failed(format!("fixtures mismatch {}: {detail}", path.display())));
        }
        println!("fixtures match {}", path.display());
        return Ok(());
    }
    let n = run.n()?;
    if threshold {
        let b = exact_threshold(n, run.variant(), run.rules(), opts).map_err(solver_err)?;
        println!("{b}");
        return Ok(());
    }
    let cfg = run.game_config()?;
    let out = solve(&cfg, opts).map_err(solver_err)?;
    println!("{:?} ({} nodes)", out.winner, out.nodes);
    Ok(())
}

fn cmd_verify(run: RunConfig, strategy: &str, out: Option<&Path>) -> Result<(), CliError> {
    let run = run.merged()?;
    let cfg = run.game_config()?;
    let (br, kr) = roles(cfg.variant);
    let available = roles_of(strategy).ok_or_else(|| CliError::usage(format!("unknown strategy {strategy:?}")))?;
    let role = [br, kr]
        .into_iter()
        .find(|r| available.contains(r))
        .ok_or_else(|| CliError::usage(format!("{strategy} plays no role in a {} game", cfg.variant)))?;
    let fixed = build_strategy(strategy, role, cfg.seed).map_err(|e| CliError::usage(e.to_string()))?;
    let opts = solver_options(&run, false, true)?;
    let result = oddcycle_core::solver::verify_strategy(
        &cfg,
        fixed.as_ref(),
        role,
        strategy_hooks(strategy, &cfg),
        VerifyOptions {
            max_nodes: opts.limits.max_nodes,
            ..VerifyOptions::default()
        },
    )
    .map_err(|e| CliError::usage(e.to_string()))?;
    match result.verdict {
        Verdict::WinsAgainstAll => {
            println!("WinsAgainstAll ({} nodes, depth {})", result.nodes, result.max_depth);
            Ok(())
        }
        Verdict::Counterexample { transcript, reason } => {
            if let Some(path) = out {
                write_or_print(Some(path), &(transcript.to_json() + "\n"))?;
            }
            println!("Counterexample: {reason} ({} moves)", transcript.moves.len());
            Err(CliError::Failed(format!("{strategy} does not win against every opponent")))
        }
    }
}

fn parse_range(text: &str) -> Result<(usize, usize), CliError> {
    let bad = || CliError::usage(format!("bad range {text:?}; expected e.g. 3-12"));
    let (lo, hi) = text.split_once('-').unwrap_or((text, text));
    let lo: usize = lo.trim().parse().map_err(|_| bad())?;
    let hi: usize = hi.trim().parse().map_err(|_| bad())?;
    if lo < 3 || lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn cmd_optimize(range: Option<&str>, b: Option<usize>, json: bool) -> Result<(), CliError> {
    let mut discrete = Vec::new();
    if let Some(range) = range {
        let (lo, hi) = parse_range(range)?;
        for n in lo..=hi {
            let biases: Vec<usize> = match b {
                Some(b) if b >= 1 && b < n => vec![b],
                Some(_) => continue,
                None => (1..n).collect(),
            };
            for b in biases {
                discrete.push(minimize_f(n, b).map_err(|e| CliError::usage(e.to_string()))?);
            }
        }
    }
    let report = OptimizerReport {
        continuous: continuous_case_minimum(),
        discrete,
        audit: None,
    };
    print!("{}", if json { report.to_json() } else { report.to_text() });
    Ok(())
}

fn cmd_audit(epsilon: f64, n: Option<usize>, json: bool) -> Result<(), CliError> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(CliError::usage(format!("epsilon must lie in (0, 1), got {epsilon}")));
    }
    let report = breaker_constant_audit(epsilon, n);
    if json {
        println!("{}", serde_json::to_string_pretty(&report).expect("audit serializes"));
    } else {
        print!("{}", audit_text(&report));
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Play {
            run,
            builder,
            blocker,
            out,
        } => cmd_play(run, &builder, &blocker, out.as_deref()),
        Command::Tournament {
            run,
            builders,
            blockers,
            games,
            saved_budget,
            csv,
            json,
            transcripts,
        } => cmd_tournament(
            run,
            builders,
            blockers,
            games,
            saved_budget,
            csv.as_deref(),
            json.as_deref(),
            transcripts.as_deref(),
        ),
        Command::Solve {
            run,
            threshold,
            canonical,
            no_memo,
            write_fixtures,
            check,
        } => cmd_solve(run, threshold, canonical, !no_memo, write_fixtures.as_deref(), check.as_deref()),
        Command::Verify { run, strategy, out } => cmd_verify(run, &strategy, out.as_deref()),
        Command::Optimize { range, b, json } => cmd_optimize(range.as_deref(), b, json),
        Command::Audit { epsilon, n, json } => cmd_audit(epsilon, n, json),
        Command::Replay { path, quiet } => replay::cmd_replay(&path, quiet),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let msg = match &e {
                CliError::Usage(m) | CliError::Failed(m) => m,
            };
            eprintln!("error: {msg}");
            ExitCode::from(e.code())
        }
    }
}

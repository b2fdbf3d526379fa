use std::fmt::Write as _;
use std::path::Path;

use oddcycle_core::engine::{replay, step, Action, MetricsSnapshot, Move, Transcript};
use oddcycle_core::{GameState, Part};

use crate::CliError;

fn edge_label(state: &GameState, e: oddcycle_core::EdgeId) -> String {
    let (u, v) = state.endpoints(e);
    format!("{u}-{v}")
}

fn describe(state: &GameState, mv: &Move) -> String {
    match &mv.action {
        Action::Claim(e) | Action::Choose(e) => edge_label(state, *e),
        Action::Offer(es) => {
            let list: Vec<String> = es.iter().map(|&e| edge_label(state, e)).collect();
            format!("offer [{}]", list.join(" "))
        }
        Action::Forfeit(why) => format!("forfeit ({why})"),
    }
}

fn round_line(out: &mut String, s: usize, state: &GameState, moves: &[String]) {
    let m = MetricsSnapshot::capture(state);
    let _ = writeln!(
        out,
        "round {s:>3}: {}\n           |V1|={} |V2|={} |R|={} d={} d1={} d2={} saved={}",
        moves.join(", "),
        state.part_set(Part::One).len(),
        state.part_set(Part::Two).len(),
        m.r_size,
        m.d,
        m.d1,
        m.d2,
        m.saved
    );
}

/// Per-round rendering of a transcript that already passed validation.
pub fn render(t: &Transcript) -> String {
    let mut out = format!(
        "{} on K_{} with b = {}, {} rules, seed {}\n",
        t.config.variant, t.config.n, t.config.b, t.config.rules, t.config.seed
    );
    let mut state = GameState::new(t.config);
    let mut current = 0;
    let mut pending = Vec::new();
    for mv in &t.moves {
        if mv.s != current && !pending.is_empty() {
            round_line(&mut out, current, &state, &pending);
            pending.clear();
        }
        current = mv.s;
        pending.push(format!("{:?} {} [{}]", mv.role, describe(&state, mv), mv.branch));
        step(&mut state, mv.action.clone(), &mv.branch).expect("validated transcript");
    }
    if !pending.is_empty() {
        round_line(&mut out, current, &state, &pending);
    }
    match t.result {
        Some(r) => {
            let _ = writeln!(out, "{:?} wins: {:?}", r.winner, r.reason);
        }
        None => out.push_str("game unfinished\n"),
    }
    let _ = writeln!(out, "digest {}", t.digest);
    out
}

pub fn cmd_replay(path: &Path, quiet: bool) -> Result<(), CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
    let t = Transcript::from_json(&text)
        .map_err(|e| CliError::usage(format!("cannot parse {}: {e}", path.display())))?;
    replay(&t).map_err(|e| CliError::Failed(e.to_string()))?;
    if !quiet {
        print!("{}", render(&t));
    }
    println!("transcript verified");
    Ok(())
}

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const FIXTURES: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/fixtures/solver_fixtures.json");

fn oddcycle(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_oddcycle"))
        .args(args)
        .env_remove("ODDCYCLE_CAPACITY_OVERRIDE")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn play(dir: &Path, name: &str, extra: &[&str]) -> std::path::PathBuf {
    let path = dir.join(name);
    let mut args = vec!["play", "--out", path.to_str().unwrap()];
    args.extend_from_slice(extra);
    let o = oddcycle(&args);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    path
}

#[test]
fn tiny_game_is_a_blocker_win() {
    let dir = TempDir::new().unwrap();
    let p = play(dir.path(), "t.json", &["-n", "3", "-b", "1", "--builder", "maker-oc", "--blocker", "random-breaker"]);
    let t: Value = serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap();
    assert_eq!(t["result"]["winner"], "blocker");
}

#[test]
fn same_seed_same_bytes() {
    let dir = TempDir::new().unwrap();
    let args = [
        "-n", "14", "-b", "3", "--rules", "connected", "--seed", "5", "--builder", "random-maker", "--blocker",
        "random-breaker",
    ];
    let a = std::fs::read(play(dir.path(), "a.json", &args)).unwrap();
    let b = std::fs::read(play(dir.path(), "b.json", &args)).unwrap();
    assert_eq!(a, b);

    let t = |out: &str| {
        oddcycle(&[
            "tournament", "-n", "12", "-b", "3", "--seed", "9", "--builders", "random-maker,maker-oc", "--blockers",
            "random-breaker", "--games", "4", "--json", out,
        ])
    };
    let (ja, jb) = (dir.path().join("a.report"), dir.path().join("b.report"));
    assert_eq!(code(&t(ja.to_str().unwrap())), 0);
    assert_eq!(code(&t(jb.to_str().unwrap())), 0);
    assert_eq!(std::fs::read(ja).unwrap(), std::fs::read(jb).unwrap());
}

#[test]
fn replay_exit_codes() {
    let dir = TempDir::new().unwrap();
    let p = play(
        dir.path(),
        "t.json",
        &["-n", "8", "-b", "2", "--seed", "3", "--builder", "random-maker", "--blocker", "random-breaker"],
    );
    let fresh = oddcycle(&["replay", p.to_str().unwrap()]);
    assert_eq!(code(&fresh), 0);
    assert!(stdout(&fresh).contains("round   1:"));

    let text = std::fs::read_to_string(&p).unwrap();
    let truncated = dir.path().join("truncated.json");
    std::fs::write(&truncated, &text[..text.len() / 2]).unwrap();
    assert_eq!(code(&oddcycle(&["replay", truncated.to_str().unwrap()])), 2);

    let mut t: Value = serde_json::from_str(&text).unwrap();
    let first = t["moves"][0]["action"]["claim"].as_u64().unwrap();
    t["moves"][0]["action"]["claim"] = Value::from((first + 1) % 28);
    let tampered = dir.path().join("tampered.json");
    std::fs::write(&tampered, serde_json::to_string(&t).unwrap()).unwrap();
    assert_eq!(code(&oddcycle(&["replay", tampered.to_str().unwrap()])), 1);

    assert_eq!(code(&oddcycle(&["replay", "/nonexistent/file.json"])), 2);
}

#[test]
fn tournament_csv_and_config_file() {
    let dir = TempDir::new().unwrap();
    let cfg = dir.path().join("run.json");
    std::fs::write(&cfg, r#"{"n": 20, "bias_frac": 0.31, "rules": "connected", "assert": true}"#).unwrap();
    let csv = dir.path().join("r.csv");
    let o = oddcycle(&[
        "tournament", "--config", cfg.to_str().unwrap(), "--builders", "random-maker,greedy-maker,maker-oc",
        "--blockers", "breaker-connected", "--games", "3", "--csv", csv.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("pairing,games,builder_wins,blocker_wins,mean_rounds,violations"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 3);
    for r in rows {
        let games: usize = r[1].parse().unwrap();
        assert_eq!(games, 3);
        assert_eq!(r[2].parse::<usize>().unwrap() + r[3].parse::<usize>().unwrap(), 3);
        assert_eq!(r[5], "0");
    }
}

#[test]
fn fractional_bias_rounding() {
    let dir = TempDir::new().unwrap();
    let base = ["-n", "33", "--bias-frac", "0.3101", "--builder", "random-maker", "--blocker", "random-breaker"];
    let b_of = |name: &str, extra: &[&str]| {
        let mut args = base.to_vec();
        args.extend_from_slice(extra);
        let p = play(dir.path(), name, &args);
        let t: Value = serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap();
        t["config"]["b"].as_u64().unwrap()
    };
    assert_eq!(b_of("ceil.json", &[]), 11);
    assert_eq!(b_of("floor.json", &["--round", "floor"]), 10);
    assert_eq!(b_of("nearest.json", &["--round", "nearest"]), 10);
}

#[test]
fn usage_errors_exit_two() {
    let bad = [
        vec!["play", "-n", "5", "-b", "1", "--builder", "nobody", "--blocker", "random-breaker"],
        vec!["play", "-n", "2", "-b", "1", "--builder", "random-maker", "--blocker", "random-breaker"],
        vec!["play", "-n", "5", "-b", "1", "--builder", "random-breaker", "--blocker", "random-maker"],
        vec!["frobnicate"],
        vec!["optimize", "--range", "9-3"],
    ];
    for args in bad {
        assert_eq!(code(&oddcycle(&args)), 2, "{args:?}");
    }
}

#[test]
fn solve_threshold_and_fixtures() {
    let o = oddcycle(&["solve", "-n", "4", "--variant", "mb", "--rules", "free", "--threshold"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "1");

    assert_eq!(code(&oddcycle(&["solve", "--check", FIXTURES])), 0);
    let dir = TempDir::new().unwrap();
    let altered = dir.path().join("f.json");
    std::fs::write(&altered, std::fs::read_to_string(FIXTURES).unwrap().replace("\"blocker\"", "\"builder\"")).unwrap();
    assert_eq!(code(&oddcycle(&["solve", "--check", altered.to_str().unwrap()])), 1);
}

#[test]
fn capacity_override() {
    assert_eq!(code(&oddcycle(&["solve", "-n", "7", "-b", "3"])), 2);
    let o = Command::new(env!("CARGO_BIN_EXE_oddcycle"))
        .args(["solve", "-n", "4", "-b", "1"])
        .env("ODDCYCLE_CAPACITY_OVERRIDE", "mb=3")
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("limit of 3"));
}

#[test]
fn verify_verdicts() {
    let ok = oddcycle(&["verify", "--strategy", "client-connected", "-n", "5", "-b", "1", "--variant", "cw", "--rules", "connected"]);
    assert_eq!(code(&ok), 0);
    assert!(stdout(&ok).starts_with("WinsAgainstAll"));

    let dir = TempDir::new().unwrap();
    let out = dir.path().join("cx.json");
    let bad = oddcycle(&[
        "verify", "--strategy", "greedy-client", "-n", "5", "-b", "1", "--variant", "cw", "--rules", "connected",
        "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(code(&bad), 1);
    assert_eq!(code(&oddcycle(&["replay", "--quiet", out.to_str().unwrap()])), 0);
}

#[test]
fn optimize_and_audit_reports() {
    let o = oddcycle(&["optimize", "--json", "--range", "5-6"]);
    assert_eq!(code(&o), 0);
    let r: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((r["continuous"]["overall"].as_f64().unwrap() - 0.3101020514).abs() < 1e-9);
    assert_eq!(r["discrete"].as_array().unwrap().len(), 4 + 5);

    let a = oddcycle(&["audit", "--json", "-n", "200"]);
    assert_eq!(code(&a), 0);
    let r: Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert!(r["rows"].as_array().unwrap().iter().any(|row| row["name"] == "size-lemma/sum" && row["holds"] == true));
    assert_eq!(code(&oddcycle(&["audit", "--epsilon", "2"])), 2);
}

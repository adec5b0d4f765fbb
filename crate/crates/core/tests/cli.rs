//! End-to-end runs of the `bimatrix` binary.

use std::path::Path;
use std::process::{Command, Output};

use nash_fpt::io::{read_game, read_profile};
use nash_fpt::verify_equilibrium;

const PENNIES: &str = r#"{"version":1,"m":2,"n":2,"A":["1","-1","-1","1"],"B":["-1","1","1","-1"]}"#;
const PENNIES_EQ: &str = r#"{"version":1,"x":["1/2","1/2"],"y":["1/2","1/2"]}"#;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bimatrix")).args(args).output().unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_accepts_mixed_equilibrium() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g.json", PENNIES);
    let p = write(dir.path(), "p.json", PENNIES_EQ);
    let o = run(&["verify", "--game", &g, "--profile", &p]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "yes");
}

#[test]
fn verify_rejects_pure_profile() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g.json", PENNIES);
    let p = write(dir.path(), "p.json", r#"{"version":1,"x":["1","0"],"y":["1","0"]}"#);
    let o = run(&["verify", "--game", &g, "--profile", &p]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("no"));
}

#[test]
fn no_equilibrium_within_bound_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g.json", PENNIES);
    let o = run(&["solve", "--algorithm", "baseline", "-k", "1", "--in", &g]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn solve_writes_verifiable_profile() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g.json", PENNIES);
    let out = dir.path().join("p.json");
    let o = run(&["solve", "--algorithm", "sparse", "-k", "2", "--in", &g, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let game = read_game(Path::new(&g)).unwrap();
    let p = read_profile(&out).unwrap();
    assert!(verify_equilibrium(&game, &p).unwrap().is_equilibrium());
}

#[test]
fn stats_on_identity() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(
        dir.path(),
        "id.json",
        r#"{"version":1,"m":3,"n":3,"A":["1","0","0","0","1","0","0","0","1"],"B":["1","0","0","0","1","0","0","0","1"]}"#,
    );
    let o = run(&["stats", "--in", &g]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("sparsity: 1\n"), "{text}");
    assert!(text.contains("max_degree: 1\n"), "{text}");
    assert!(text.contains("edges: 3\n"), "{text}");
}

#[test]
fn decimal_entry_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g.json", &PENNIES.replace("\"1\",\"-1\"]}", "\"1\",\"0.5\"]}"));
    let o = run(&["solve", "--algorithm", "baseline", "-k", "1", "--in", &g]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
}

#[test]
fn gen_then_solve_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.json");
    let gs = g.to_str().unwrap();
    let o = run(&["gen", "--family", "sparse", "--n", "12", "-l", "2", "--seed", "4", "--out", gs]);
    assert_eq!(o.status.code(), Some(0));
    let again = run(&["gen", "--family", "sparse", "--n", "12", "-l", "2", "--seed", "4"]);
    assert_eq!(std::fs::read_to_string(&g).unwrap(), stdout(&again));
    let o = run(&["solve", "--algorithm", "sparse", "-k", "2", "--in", gs]);
    assert!(matches!(o.status.code(), Some(0 | 1)));
}

#[test]
fn oracle_and_bench_produce_output() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g.json", PENNIES);
    let o = run(&["oracle", "-k", "2", "--in", &g]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["hits"].as_array().unwrap().len(), 1);

    let o = run(&["bench", "--family", "sparse", "--n", "10", "--count", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let csv = stdout(&o);
    assert!(csv.starts_with("instance,family,algorithm"));
    assert_eq!(csv.lines().count(), 5);
}

#[test]
fn unknown_subcommand_is_a_usage_error() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

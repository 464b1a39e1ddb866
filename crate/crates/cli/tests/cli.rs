use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_sparse-monoid"));
    c.env_remove("SPARSE_FACE_CAP");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("sparse-monoid-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn check_exit_codes() {
    let ok = run(&["check", "abABcdCD"]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(stdout(&ok), "SPARSE\n");

    let not = run(&["check", "abAB"]);
    assert_eq!(not.status.code(), Some(1));
    let text = stdout(&not);
    assert!(text.starts_with("NOT SPARSE\n"));
    assert!(text.contains("(sparse 1)"));

    assert_eq!(run(&["check", "ab1"]).status.code(), Some(2));
    assert_eq!(run(&["check", "aA"]).status.code(), Some(1));
}

#[test]
fn solve_verdicts() {
    let first = |args: &[&str]| stdout(&run(args)).lines().next().unwrap().to_string();
    assert_eq!(first(&["solve", "abABcdCD", "abABcdCD"]), "IDENTITY");
    assert_eq!(first(&["solve", "abABcdCD", "a"]), "NOT_IDENTITY");
    assert_eq!(first(&["solve", "abABcdCD", "cC"]), "NOT_IN_RCLASS");
    assert_eq!(first(&["rclass", "abABcdCD", "aa"]), "IN_RCLASS");
    assert_eq!(first(&["rclass", "abABcdCD", "aB"]), "NOT_IN_RCLASS");
    assert_eq!(first(&["geodesic", "abABcdCD", "abAB"]), "GEODESIC");
    assert_eq!(first(&["geodesic", "abABcdCD", "abABc"]), "NOT_GEODESIC");

    let json: serde_json::Value =
        serde_json::from_slice(&run(&["solve", "abABcdCD", "ab", "--format", "json"]).stdout).unwrap();
    assert_eq!(json["outcome"], "NOT_IDENTITY");
    assert_eq!(json["distance"], 2);

    let bad = run(&["solve", "abAB", "x"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("not sparse"));
}

#[test]
fn emitted_dfa_has_nineteen_live_states() {
    let o = run(&["emit", "abABcdCD", "dfa"]);
    assert_eq!(o.status.code(), Some(0));
    let dot = stdout(&o);
    assert!(dot.starts_with("digraph"));
    // Every live state accepts; the dead state is the only plain circle.
    assert_eq!(dot.matches("shape=doublecircle").count(), 19);
    assert_eq!(dot.matches("shape=circle").count(), 1);

    let json: serde_json::Value =
        serde_json::from_slice(&run(&["cone-types", "abABcdCD", "--format", "json"]).stdout).unwrap();
    assert_eq!(json["live_states"], 19);
    assert_eq!(json["with_dead_state"], 20);
}

#[test]
fn pda_table_is_deterministic() {
    let text = stdout(&run(&["emit", "abABcdCD", "pda", "--format", "text"]));
    let rows: Vec<(&str, &str, &str)> = text
        .lines()
        .filter(|l| l.contains(" -> ") && l.starts_with('q'))
        .map(|l| {
            let mut p = l.split_whitespace();
            (p.next().unwrap(), p.next().unwrap(), p.next().unwrap())
        })
        .collect();
    assert!(!rows.is_empty());
    let mut keys = rows.clone();
    keys.sort_unstable();
    keys.dedup();
    assert_eq!(keys.len(), rows.len());

    let json: serde_json::Value =
        serde_json::from_slice(&run(&["emit", "abABcdCD", "rpda", "--format", "json"]).stdout).unwrap();
    assert_eq!(json["language"], "r_class");
    assert_eq!(json["accept"].as_array().unwrap().len(), json["states"].as_array().unwrap().len());
}

#[test]
fn complex_json_round_trips_through_audit() {
    let path = tmp("c2.json");
    let o = run(&["emit", "abABcdCD", "complex@2", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["faces"].as_array().unwrap().len(), 9);

    let audit = run(&["audit", "--import", path.to_str().unwrap()]);
    assert_eq!(audit.status.code(), Some(0), "{}", stdout(&audit));
    assert!(!stdout(&audit).contains("FAIL"));

    let mut bad = doc.clone();
    let b = bad["faces"][1]["boundary"].as_array_mut().unwrap();
    b[3] = b[5].clone();
    let bad_path = tmp("bad.json");
    std::fs::write(&bad_path, serde_json::to_string(&bad).unwrap()).unwrap();
    let audit = run(&["audit", "--import", bad_path.to_str().unwrap()]);
    assert_eq!(audit.status.code(), Some(4));
    assert!(stdout(&audit).contains("FAIL faces embed"));

    std::fs::write(&bad_path, "{").unwrap();
    assert_eq!(run(&["audit", "--import", bad_path.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn audit_passes_and_refuses_non_sparse() {
    let o = run(&["audit", "abABcdCD", "3", "--words", "--max-word-len", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.lines().all(|l| l.starts_with("PASS ")));
    assert!(text.contains("fold order independence (seed 7)"));
    assert!(text.contains("automata on words up to length 3"));

    assert_eq!(run(&["audit", "abAB", "2"]).status.code(), Some(1));
    assert_eq!(run(&["audit", "abABcdCD"]).status.code(), Some(2));
}

#[test]
fn face_cap_from_environment() {
    let o = bin().env("SPARSE_FACE_CAP", "5").args(["emit", "abABcdCD", "complex@3"]).output().unwrap();
    assert_eq!(o.status.code(), Some(3));
    let o = bin().env("SPARSE_FACE_CAP", "5").args(["emit", "abABcdCD", "complex@1"]).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(run(&["check", "ab", "--face-cap", "0"]).status.code(), Some(2));
}

#[test]
fn outputs_are_byte_identical() {
    for args in [
        &["emit", "abABcdCD", "complex@3", "--format", "json"][..],
        &["emit", "abABcdCD", "pda", "--format", "json"],
        &["emit", "abABcdCD", "fsa"],
        &["audit", "abABcdCD", "2", "--seed", "99", "--format", "json"],
    ] {
        assert_eq!(run(args).stdout, run(args).stdout, "{args:?}");
    }
}

#[test]
fn usage_errors() {
    assert_eq!(run(&["emit", "abABcdCD", "nfa"]).status.code(), Some(2));
    assert_eq!(run(&["emit", "abABcdCD", "classes", "--format", "dot"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

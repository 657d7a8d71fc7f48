//! End-to-end tests running the `lexirev` binary on sequence files.

use std::fs;
use std::process::{Command, Output};

use lexirev::formula::{formula_to_clauses, is_horn, parse_formula};
use lexirev::solver::{import_dimacs, solve};
use tempfile::TempDir;

fn run(args: &[&str]) -> (i32, String, String) {
    run_with_env(args, &[])
}

fn run_with_env(args: &[&str], env: &[(&str, &str)]) -> (i32, String, String) {
    let mut command = Command::new(env!("CARGO_BIN_EXE_lexirev"));
    command.args(args);
    for (key, value) in env {
        command.env(key, value);
    }
    let Output {
        status,
        stdout,
        stderr,
    } = command.output().expect("binary runs");
    (
        status.code().expect("binary exits normally"),
        String::from_utf8(stdout).expect("stdout is text"),
        String::from_utf8(stderr).expect("stderr is text"),
    )
}

fn seq(dir: &TempDir, name: &str, content: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, content).expect("test file is writable");
    path.to_str().expect("temp paths are unicode").to_string()
}

/// Formula lines of an emitted sequence file, comments and directives
/// stripped.
fn formula_lines(path: &str) -> Vec<String> {
    fs::read_to_string(path)
        .expect("output file exists")
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#') && !l.starts_with('@'))
        .map(str::to_string)
        .collect()
}

#[test]
fn equiv_reports_equivalent_sequences() {
    let dir = TempDir::new().unwrap();
    let split = seq(&dir, "split.seq", "a & b\na & !b\n!a & b\n!a & !b\n");
    let plain = seq(&dir, "plain.seq", "a\nb\n");
    for engine in ["sat", "brute", "auto"] {
        let (code, stdout, _) = run(&["equiv", &split, &plain, "--engine", engine]);
        assert_eq!(code, 0, "engine {engine}");
        assert_eq!(stdout, "EQUIVALENT\n", "engine {engine}");
    }
}

#[test]
fn equiv_reports_a_witness_for_different_sequences() {
    let dir = TempDir::new().unwrap();
    let one = seq(&dir, "one.seq", "a\n");
    let empty = seq(&dir, "empty.seq", "# nothing yet\n");

    let (code, stdout, _) = run(&["equiv", &one, &empty, "--engine", "brute"]);
    assert_eq!(code, 1);
    assert_eq!(stdout, "NOT EQUIVALENT\nwitness i: a:1\nwitness j: a:0\n");

    let (code, stdout, _) = run(&["equiv", &one, &empty, "--engine", "sat"]);
    assert_eq!(code, 1);
    assert_eq!(stdout, "NOT EQUIVALENT\nwitness i: a:0\nwitness j: a:1\n");
}

#[test]
fn exit_codes_follow_the_verdict() {
    let dir = TempDir::new().unwrap();
    let a = seq(&dir, "a.seq", "a\n");
    let broken = seq(&dir, "broken.seq", "a &\n");

    let (code, _, _) = run(&["equiv", &a, &a]);
    assert_eq!(code, 0);

    let b = seq(&dir, "b.seq", "b\n");
    let (code, _, _) = run(&["equiv", &a, &b]);
    assert_eq!(code, 1);

    let (code, stdout, stderr) = run(&["equiv", &a, &broken]);
    assert_eq!(code, 2);
    assert_eq!(stdout, "");
    assert!(stderr.starts_with("error: "), "stderr was: {stderr}");

    let (code, _, _) = run(&[
        "equiv",
        &a,
        dir.path().join("missing.seq").to_str().unwrap(),
    ]);
    assert_eq!(code, 2);

    let (code, _, _) = run(&["no-such-command"]);
    assert_eq!(code, 2);
}

#[test]
fn json_output_has_the_contract_fields() {
    let dir = TempDir::new().unwrap();
    let a = seq(&dir, "a.seq", "a\n");
    let b = seq(&dir, "b.seq", "b\n");

    let (code, stdout, _) = run(&["equiv", &a, &a, "--json"]);
    assert_eq!(code, 0);
    let report: serde_json::Value = serde_json::from_str(stdout.trim()).expect("valid json");
    assert_eq!(report["verdict"], "EQUIVALENT");
    assert!(report["witness"].is_null());
    assert_eq!(report["engine"], "bruteforce");
    assert!(report["timing_ms"].as_f64().expect("timing is a number") >= 0.0);

    let (code, stdout, _) = run(&["equiv", &a, &b, "--json", "--engine", "sat"]);
    assert_eq!(code, 1);
    let report: serde_json::Value = serde_json::from_str(stdout.trim()).expect("valid json");
    assert_eq!(report["verdict"], "NOT EQUIVALENT");
    assert_eq!(report["engine"], "sat");
    let witness = report["witness"].as_object().expect("witness is an object");
    for side in ["i", "j"] {
        let model = witness[side].as_object().expect("witness side is a map");
        assert_eq!(model.len(), 2);
        assert!(model["a"].is_boolean() && model["b"].is_boolean());
    }
}

#[test]
fn redundant_defaults_to_the_last_position() {
    let dir = TempDir::new().unwrap();
    let doubled = seq(&dir, "doubled.seq", "a\na\n");
    let (code, stdout, _) = run(&["redundant", &doubled]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "REDUNDANT\n");

    let refined = seq(&dir, "refined.seq", "a\n!a | b\n");
    let (code, stdout, _) = run(&["redundant", &refined]);
    assert_eq!(code, 1);
    assert_eq!(
        stdout,
        "IRREDUNDANT\nwitness i: a:1 b:0\nwitness j: a:1 b:1\n"
    );
}

#[test]
fn redundant_accepts_an_explicit_position() {
    let dir = TempDir::new().unwrap();
    let three = seq(&dir, "three.seq", "a\n!a | b\na & b\n");
    let (code, stdout, _) = run(&["redundant", &three, "--pos", "2"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "REDUNDANT\n");

    let pair = seq(&dir, "pair.seq", "a\nb\n");
    let (code, _, _) = run(&["redundant", &pair, "--pos", "2"]);
    assert_eq!(code, 1);

    let (code, _, _) = run(&["redundant", &pair, "--pos", "0"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["redundant", &pair, "--pos", "3"]);
    assert_eq!(code, 2);
}

#[test]
fn minimize_writes_the_reduced_sequence() {
    let dir = TempDir::new().unwrap();
    let tripled = seq(&dir, "tripled.seq", "a\na\na\n");
    let out = dir.path().join("tripled.min.seq");
    let out = out.to_str().unwrap();
    let (code, stdout, _) = run(&["minimize", &tripled, "-o", out]);
    assert_eq!(code, 0);
    assert!(
        stdout.contains("removed positions: 3, 2"),
        "stdout was: {stdout}"
    );
    assert_eq!(formula_lines(out), ["a"]);

    let again = dir.path().join("tripled.min2.seq");
    let again = again.to_str().unwrap();
    let (code, stdout, _) = run(&["minimize", out, "-o", again]);
    assert_eq!(code, 0);
    assert!(
        stdout.contains("removed positions: none"),
        "stdout was: {stdout}"
    );
    assert_eq!(formula_lines(again), ["a"]);

    let layered = seq(&dir, "layered.seq", "a\n!a | b\na & b\n");
    let out = dir.path().join("layered.min.seq");
    let out = out.to_str().unwrap();
    let (code, _, _) = run(&["minimize", &layered, "-o", out]);
    assert_eq!(code, 0);
    assert_eq!(formula_lines(out).len(), 2);
}

#[test]
fn dimacs_export_matches_the_equiv_verdict() {
    let dir = TempDir::new().unwrap();
    let pairs = [
        ("a & b\na & !b\n!a & b\n!a & !b\n", "a\nb\n"),
        ("a\n", "a\n"),
        ("a\n", "b\n"),
        ("a\nb\n", "b\na\n"),
        ("a\n", ""),
        ("a\n!a | b\n", "a\n"),
    ];
    for (k, (left, right)) in pairs.iter().enumerate() {
        let a = seq(&dir, &format!("left{k}.seq"), left);
        let b = seq(&dir, &format!("right{k}.seq"), right);
        let out = dir.path().join(format!("diff{k}.dimacs"));
        let out = out.to_str().unwrap();
        let (code, _, _) = run(&["dimacs", &a, &b, "-o", out]);
        assert_eq!(code, 0, "pair {k}");

        let text = fs::read_to_string(out).unwrap();
        let (cnf, _) = import_dimacs(&text).expect("emitted DIMACS re-imports");
        let difference_is_satisfiable = solve(&cnf).is_satisfiable();

        let (verdict, _, _) = run(&["equiv", &a, &b, "--engine", "sat"]);
        assert_eq!(
            difference_is_satisfiable,
            verdict == 1,
            "pair {k}: exported encoding and equiv disagree"
        );
    }
}

#[test]
fn gen_hard_output_is_horn_and_tracks_satisfiability() {
    let dir = TempDir::new().unwrap();

    let unsat = seq(&dir, "unsat.cnf", "x & !x\n");
    let hard = dir.path().join("unsat.seq");
    let hard = hard.to_str().unwrap();
    let (code, _, _) = run(&["gen-hard", &unsat, "-o", hard]);
    assert_eq!(code, 0);
    for line in formula_lines(hard) {
        let f = parse_formula(&line).expect("emitted lines parse");
        let cnf = formula_to_clauses(&f).expect("emitted lines are clausal");
        assert!(cnf.clauses().iter().all(is_horn), "non-Horn line: {line}");
    }
    let (code, stdout, _) = run(&["redundant", hard]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "REDUNDANT\n");

    let sat = seq(&dir, "sat.cnf", "(x | y) & !z\n");
    let easy = dir.path().join("sat.seq");
    let easy = easy.to_str().unwrap();
    let (code, _, _) = run(&["gen-hard", &sat, "-o", easy]);
    assert_eq!(code, 0);
    let (code, stdout, _) = run(&["redundant", easy]);
    assert_eq!(code, 1);
    assert!(stdout.starts_with("IRREDUNDANT\n"), "stdout was: {stdout}");

    let dimacs = seq(
        &dir,
        "sat.dimacs",
        "c mutual implication\np cnf 2 2\n1 -2 0\n-1 2 0\n",
    );
    let from_dimacs = dir.path().join("dimacs.seq");
    let from_dimacs = from_dimacs.to_str().unwrap();
    let (code, _, _) = run(&["gen-hard", &dimacs, "-o", from_dimacs]);
    assert_eq!(code, 0);
    let (code, _, _) = run(&["redundant", from_dimacs]);
    assert_eq!(code, 1);

    let clash = seq(&dir, "clash.cnf", "sel & x\n");
    let (code, _, stderr) = run(&[
        "gen-hard",
        &clash,
        "-o",
        dir.path().join("clash.seq").to_str().unwrap(),
    ]);
    assert_eq!(code, 2);
    assert!(stderr.contains("sel"), "stderr was: {stderr}");

    let shapeless = seq(&dir, "shapeless.cnf", "a <-> b\n");
    let (code, _, _) = run(&[
        "gen-hard",
        &shapeless,
        "-o",
        dir.path().join("shapeless.seq").to_str().unwrap(),
    ]);
    assert_eq!(code, 2);
}

#[test]
fn dimacs_export_feeds_gen_hard_round_trip() {
    let dir = TempDir::new().unwrap();
    let s = seq(&dir, "s.seq", "a & b\na | b\n");
    let refined = seq(&dir, "refined.seq", "a & b\na | b\nb\n");
    let respelled = seq(&dir, "respelled.seq", "b & a\nb | a\n");

    for (other, expected) in [(&refined, 1), (&respelled, 0)] {
        let cnf = dir.path().join("diff.cnf");
        let cnf = cnf.to_str().unwrap();
        let (code, _, _) = run(&["dimacs", &s, other, "-o", cnf]);
        assert_eq!(code, 0);
        let hard = dir.path().join("hard.seq");
        let hard = hard.to_str().unwrap();
        let (code, _, stderr) = run(&["gen-hard", cnf, "-o", hard]);
        assert_eq!(code, 0, "gen-hard failed: {stderr}");
        let (code, _, stderr) = run(&["redundant", hard]);
        assert_eq!(code, expected, "redundant failed: {stderr}");
    }
}

#[test]
fn horn_check_decides_two_formula_sequences() {
    let dir = TempDir::new().unwrap();
    let doubled = seq(&dir, "doubled.seq", "a\na\n");
    let (code, stdout, _) = run(&["horn-check", &doubled, "--json"]);
    assert_eq!(code, 0);
    let report: serde_json::Value = serde_json::from_str(stdout.trim()).unwrap();
    assert_eq!(report["verdict"], "REDUNDANT");
    assert_eq!(report["engine"], "horn");

    let distinct = seq(&dir, "distinct.seq", "a\nb\n");
    let (code, stdout, _) = run(&["horn-check", &distinct]);
    assert_eq!(code, 1);
    assert_eq!(stdout, "IRREDUNDANT\n");

    let three = seq(&dir, "three.seq", "a\na\na\n");
    let (code, _, _) = run(&["horn-check", &three]);
    assert_eq!(code, 2);

    let broad = seq(&dir, "broad.seq", "a | b\na\n");
    let (code, _, _) = run(&["horn-check", &broad]);
    assert_eq!(code, 2);

    let shapeless = seq(&dir, "shapeless.seq", "a <-> b\na\n");
    let (code, _, _) = run(&["horn-check", &shapeless]);
    assert_eq!(code, 2);
}

#[test]
fn chronological_reverses_the_reading_order() {
    let dir = TempDir::new().unwrap();
    // Most-recent-first: the contradiction sits last and is redundant; read
    // oldest-first the last entry becomes `a`, which refines the order.
    let file = seq(&dir, "order.seq", "a\nb & !b\n");
    let (code, _, _) = run(&["redundant", &file]);
    assert_eq!(code, 0);
    let (code, _, _) = run(&["redundant", &file, "--chronological"]);
    assert_eq!(code, 1);
}

#[test]
fn alphabet_directive_fixes_the_variable_set() {
    let dir = TempDir::new().unwrap();
    let declared = seq(&dir, "declared.seq", "@alphabet a b\na\n");
    let (code, stdout, _) = run(&["redundant", &declared, "--pos", "1"]);
    assert_eq!(code, 1);
    assert!(
        stdout.contains("b:"),
        "witness must range over the declared alphabet: {stdout}"
    );

    let bare = seq(&dir, "bare.seq", "a\n");
    let (code, _, _) = run(&["equiv", &declared, &bare]);
    assert_eq!(code, 0);

    let outside = seq(&dir, "outside.seq", "@alphabet a\nb\n");
    let (code, _, _) = run(&["redundant", &outside]);
    assert_eq!(code, 2);

    let repeated = seq(&dir, "repeated.seq", "@alphabet a\n@alphabet b\na\n");
    let (code, _, _) = run(&["redundant", &repeated]);
    assert_eq!(code, 2);

    let unknown = seq(&dir, "unknown.seq", "@frobnicate\na\n");
    let (code, _, _) = run(&["redundant", &unknown]);
    assert_eq!(code, 2);
}

#[test]
fn max_vars_env_overrides_the_enumeration_cap() {
    let dir = TempDir::new().unwrap();
    let a = seq(&dir, "a.seq", "a & b\n");
    let b = seq(&dir, "b.seq", "a | b\n");

    let (code, _, stderr) = run_with_env(
        &["equiv", &a, &b, "--engine", "brute"],
        &[("LEXIREV_MAX_VARS", "1")],
    );
    assert_eq!(code, 2);
    assert!(stderr.contains("cap"), "stderr was: {stderr}");

    let (code, _, _) = run_with_env(
        &["equiv", &a, &b, "--engine", "brute"],
        &[("LEXIREV_MAX_VARS", "2")],
    );
    assert_eq!(code, 1);

    let (code, _, _) = run_with_env(
        &["equiv", &a, &b, "--engine", "brute"],
        &[("LEXIREV_MAX_VARS", "plenty")],
    );
    assert_eq!(code, 2);
}

#[test]
fn emitted_sequence_files_read_back_identically() {
    let dir = TempDir::new().unwrap();
    let original = seq(&dir, "original.seq", "a -> b\n(a | b) & c\n!c\n");
    let copy = dir.path().join("copy.seq");
    let copy = copy.to_str().unwrap();
    let (code, _, _) = run(&["minimize", &original, "-o", copy]);
    assert_eq!(code, 0);
    let (code, stdout, _) = run(&["equiv", &original, copy]);
    assert_eq!(code, 0, "minimized file must stay equivalent: {stdout}");
}

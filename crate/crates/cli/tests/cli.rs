use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn q1ca(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_q1ca")).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path
}

fn zoo_file(dir: &TempDir, args: &[&str], name: &str) -> PathBuf {
    let out = q1ca(args);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    write(dir, name, &stdout(&out))
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const COUNTER_ZERO: &str = "\
kind rtp1ca
counter checked
simple false
states live dead
input a b
accept live
trans live CENT any -> live 0 : 1
trans live a any -> live +1 : 1
trans live b any -> live -1 : 1
trans live DOLLAR zero -> live 0 : 1
trans live DOLLAR plus -> dead 0 : 1
trans live DOLLAR minus -> dead 0 : 1
trans dead CENT any -> dead 0 : 1
trans dead a any -> dead +1 : 1
trans dead b any -> dead -1 : 1
trans dead DOLLAR any -> dead 0 : 1
";

const COIN: &str = "\
kind rtp1ca
counter blind
simple true
states yes no
input a b
accept yes
dc yes * 0
dc no * 0
trans yes CENT any -> yes 0 : 1/2
trans yes CENT any -> no 0 : 1/2
trans no CENT any -> yes 0 : 1/2
trans no CENT any -> no 0 : 1/2
trans yes a any -> yes 0 : 1
trans no a any -> no 0 : 1
trans yes b any -> no 0 : 1
trans no b any -> yes 0 : 1
trans yes DOLLAR any -> yes 0 : 1
trans no DOLLAR any -> no 0 : 1
";

#[test]
fn zoo_machines_validate() {
    let dir = TempDir::new().unwrap();
    for (args, name) in [(&["zoo", "m1"][..], "m1.txt"), (&["zoo", "m2", "--n", "3"][..], "m2.txt")] {
        let path = zoo_file(&dir, args, name);
        let out = q1ca(&["validate", s(&path)]);
        assert_eq!(code(&out), 0, "{}{}", stdout(&out), stderr(&out));
        assert_eq!(stdout(&out), "OK\n");
    }
}

#[test]
fn zoo_m2_state_count() {
    let out = q1ca(&["zoo", "m2", "--n", "3"]);
    let text = stdout(&out);
    let states = text.lines().find(|l| l.starts_with("states ")).unwrap();
    // 1 + (3 + 4 + 4) + 3
    assert_eq!(states.split_whitespace().count() - 1, 15);
}

#[test]
fn zoo_m2_rejects_one_path() {
    let out = q1ca(&["zoo", "m2", "--n", "1"]);
    assert_eq!(code(&out), 2);
    assert!(stdout(&out).is_empty());
}

#[test]
fn validate_reports_mutation() {
    let dir = TempDir::new().unwrap();
    let text = stdout(&q1ca(&["zoo", "m1"]));
    let mutated = text.replacen("trans q1 a any -> q1 +1 wn : 1", "trans q1 a any -> q1 +1 wn : 0.8", 1);
    assert_ne!(mutated, text);
    let path = write(&dir, "bad.txt", &mutated);
    let out = q1ca(&["validate", s(&path)]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).lines().any(|l| l.starts_with("COND eq1 WITNESS (q1,q1,a,")), "{}", stdout(&out));
}

#[test]
fn validate_parse_errors() {
    let dir = TempDir::new().unwrap();
    let out = q1ca(&["validate", s(&write(&dir, "empty.txt", ""))]);
    assert_eq!(code(&out), 2);
    let out = q1ca(&["validate", s(&write(&dir, "typo.txt", "kind rtp1ca\nstates q\ninput a\ntrans q z any -> q 0 : 1\n"))]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("line 4, column 9"), "{}", stderr(&out));
    let out = q1ca(&["validate", "/nonexistent/machine.txt"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn missing_columns_without_completion() {
    let dir = TempDir::new().unwrap();
    let text = stdout(&q1ca(&["zoo", "m1"]));
    let partial: String = text.lines().filter(|l| !l.starts_with("trans p1 CENT")).map(|l| format!("{l}\n")).collect();
    let out = q1ca(&["validate", s(&write(&dir, "partial.txt", &partial))]);
    assert_eq!(code(&out), 1);
    let completed = format!("{partial}auto-complete unitary\n");
    let out = q1ca(&["validate", s(&write(&dir, "completed.txt", &completed))]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
}

#[test]
fn run_zoo_machines() {
    let dir = TempDir::new().unwrap();
    let m1 = zoo_file(&dir, &["zoo", "m1"], "m1.txt");
    let out = q1ca(&["run", s(&m1), "aacc"]);
    assert_eq!(stdout(&out), "ACCEPT 0.25 REJECT 0.75 UNRESOLVED 0 STEPS 6\n");
    let out = q1ca(&["run", s(&m1), "abc"]);
    assert!(stdout(&out).starts_with("ACCEPT 0 REJECT 1 "), "{}", stdout(&out));
    let out = q1ca(&["run", s(&m1), "aacc", "--engine", "density"]);
    assert!(stdout(&out).starts_with("ACCEPT 0.25 "));
    let out = q1ca(&["run", s(&m1), ""]);
    assert!(stdout(&out).starts_with("ACCEPT 0 REJECT 1 "));

    let m2 = zoo_file(&dir, &["zoo", "m2", "--n", "2"], "m2.txt");
    let out = q1ca(&["run", s(&m2), "ab"]);
    assert!(stdout(&out).starts_with("ACCEPT 0.5 REJECT 0.5 UNRESOLVED 0 "), "{}", stdout(&out));
}

#[test]
fn run_input_errors() {
    let dir = TempDir::new().unwrap();
    let m1 = zoo_file(&dir, &["zoo", "m1"], "m1.txt");
    assert_eq!(code(&q1ca(&["run", s(&m1), "abd"])), 2);
    assert_eq!(code(&q1ca(&["run", s(&m1), "abc", "--max-steps", "1"])), 2);
    let out = q1ca(&["run", s(&m1), "abc", "--branch-cap", "1", "--engine", "branch"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn compile_lift_validates() {
    let dir = TempDir::new().unwrap();
    let coin = write(&dir, "coin.txt", COIN);
    let out = q1ca(&["compile", "lift", s(&coin)]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let lifted = write(&dir, "lifted.txt", &stdout(&out));
    assert_eq!(code(&q1ca(&["validate", s(&lifted)])), 0);
    for w in ["", "a", "ab", "bba"] {
        let p = stdout(&q1ca(&["run", s(&coin), w]));
        let q = stdout(&q1ca(&["run", s(&lifted), w]));
        assert_eq!(p.split_whitespace().nth(1), q.split_whitespace().nth(1), "{w}");
    }
}

#[test]
fn compile_lift_needs_simple_machine() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "zero.txt", COUNTER_ZERO);
    let out = q1ca(&["compile", "lift", s(&path)]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("simplify"), "{}", stderr(&out));

    let out = q1ca(&["compile", "simplify", s(&path)]);
    assert_eq!(code(&out), 0);
    let simple = write(&dir, "simple.txt", &stdout(&out));
    let out = q1ca(&["compile", "lift", s(&simple)]);
    assert_eq!(code(&out), 0);
    let lifted = write(&dir, "lifted.txt", &stdout(&out));
    assert_eq!(code(&q1ca(&["validate", s(&lifted)])), 0);
    assert!(stdout(&q1ca(&["run", s(&lifted), "abba"])).starts_with("ACCEPT 1 "));
    assert!(stdout(&q1ca(&["run", s(&lifted), "aba"])).starts_with("ACCEPT 0 "));
}

#[test]
fn compile_wrong_kind() {
    let dir = TempDir::new().unwrap();
    let m1 = zoo_file(&dir, &["zoo", "m1"], "m1.txt");
    assert_eq!(code(&q1ca(&["compile", "simplify", s(&m1)])), 2);
    assert_eq!(code(&q1ca(&["compile", "lift", s(&m1)])), 2);
}

#[test]
fn simplify_is_equivalent_under_sweep() {
    let dir = TempDir::new().unwrap();
    let coin = write(&dir, "coin.txt", COIN);
    let simple = write(&dir, "simple.txt", &stdout(&q1ca(&["compile", "simplify", s(&coin)])));
    let before = stdout(&q1ca(&["sweep", s(&coin), "--oracle", "all", "--max-len", "3"]));
    let after = stdout(&q1ca(&["sweep", s(&simple), "--oracle", "all", "--max-len", "3"]));
    assert_eq!(before, after);
    assert_eq!(before.lines().count(), 16);
}

#[test]
fn sweep_summaries() {
    let dir = TempDir::new().unwrap();
    let m1 = zoo_file(&dir, &["zoo", "m1"], "m1.txt");
    let out = q1ca(&["sweep", s(&m1), "--oracle", "l3", "--max-len", "7", "--summary"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).starts_with("ONE-SIDED error=0.75 cutpoint=[0,0.25)"), "{}", stdout(&out));
    let m2 = zoo_file(&dir, &["zoo", "m2", "--n", "4"], "m2.txt");
    let out = q1ca(&["sweep", s(&m2), "--oracle", "l4", "--max-len", "6", "--summary"]);
    assert!(stdout(&out).starts_with("ONE-SIDED error=0.25"), "{}", stdout(&out));
}

#[test]
fn sweep_rows_are_ordered() {
    let dir = TempDir::new().unwrap();
    let m1 = zoo_file(&dir, &["zoo", "m1"], "m1.txt");
    let out = stdout(&q1ca(&["sweep", s(&m1), "--oracle", "l3", "--max-len", "2", "--alphabet", "a,c"]));
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 8);
    assert_eq!(lines[0], "ε\tNONMEMBER\t0");
    assert_eq!(lines[3], "ac\tMEMBER\t0.25");
    assert!(lines[7].starts_with("ONE-SIDED"));
}

#[test]
fn sweep_unknown_oracle() {
    let dir = TempDir::new().unwrap();
    let m1 = zoo_file(&dir, &["zoo", "m1"], "m1.txt");
    let out = q1ca(&["sweep", s(&m1), "--oracle", "l9", "--max-len", "2"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("unknown oracle"));
    let out = q1ca(&["sweep", s(&m1), "--oracle", "leq", "--max-len", "2"]);
    assert_eq!(code(&out), 0);
}

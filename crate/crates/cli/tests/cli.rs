use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn pwsolve(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pwsolve")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_string_lossy().into_owned()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = path(dir, name);
    fs::write(&p, text).unwrap();
    p
}

#[test]
fn gen_is_deterministic() {
    let a = pwsolve(&["gen-3dm", "--q", "3", "--t", "6", "--seed", "9"]);
    let b = pwsolve(&["gen-3dm", "--q", "3", "--t", "6", "--seed", "9"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("q: 3\n"));
    assert_eq!(stdout(&a).lines().filter(|l| l.starts_with("triple:")).count(), 6);
}

#[test]
fn reduce_solve_verify_pipeline() {
    let dir = TempDir::new().unwrap();
    let inst = path(&dir, "i.3dm");
    let prof = path(&dir, "i.prof");
    let wit = path(&dir, "w.prof");
    let g = pwsolve(&["gen-3dm", "--q", "2", "--t", "4", "--seed", "1", "--force", "yes", "-o", &inst]);
    assert_eq!(code(&g), 0);
    let r = pwsolve(&["reduce", &inst, "--variant", "2approval", "-o", &prof]);
    assert_eq!(code(&r), 0, "{}", String::from_utf8_lossy(&r.stderr));
    assert!(stdout(&r).contains("candidates: 9"));
    assert!(Path::new(&format!("{prof}.meta")).exists());

    let s = pwsolve(&["solve-pw", &prof, "--witness", &wit]);
    assert_eq!(code(&s), 0);
    assert!(stdout(&s).ends_with("yes\n"));

    let meta = format!("{prof}.meta");
    let v = pwsolve(&["verify", &wit, "--meta", &meta, "--profile", &prof]);
    assert_eq!(code(&v), 0, "{}", stdout(&v));
    let out = stdout(&v);
    assert!(out.contains("c wins: true"));
    assert!(out.contains("score audit: ok"));
    assert!(out.lines().any(|l| l.starts_with("matching: ")));

    // c is never a necessary winner of a reduction output
    let n = pwsolve(&["solve-nw", &prof]);
    assert_eq!(code(&n), 1);
    assert_eq!(stdout(&n), "no\n");
}

#[test]
fn truncated_reduction_verifies_with_tightness() {
    let dir = TempDir::new().unwrap();
    let inst = write(&dir, "i.3dm", "q: 1\ntriple: x1 y1 z1\ntriple: x1 y1 z1\n");
    let prof = path(&dir, "t.prof");
    let wit = path(&dir, "w.prof");
    assert_eq!(code(&pwsolve(&["reduce", &inst, "--variant", "ttb", "--rule", "borda", "-o", &prof])), 0);
    assert_eq!(code(&pwsolve(&["solve-pw", &prof, "--witness", &wit])), 0);
    let v = pwsolve(&["verify", &wit, "--meta", &format!("{prof}.meta"), "--profile", &prof]);
    assert_eq!(code(&v), 0, "{}", stdout(&v));
    assert!(stdout(&v).contains("tightness: ok"));
}

#[test]
fn no_answers_exit_one() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "p.prof", "candidates: a,b\nvote: b > a\nvote: b > a\nvote: a > b\n");
    let o = pwsolve(&["solve-pw", &p, "--rule", "plurality", "--candidate", "a"]);
    assert_eq!(code(&o), 1);
    let o = pwsolve(&["solve-pw", &p, "--rule", "plurality", "--candidate", "a", "--oracle"]);
    assert_eq!(code(&o), 1);
    let o = pwsolve(&["solve-nw", &p, "--rule", "plurality", "--candidate", "b"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn unique_semantics_flag() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "p.prof", "candidates: a,b\ndistinguished: a\nrule: plurality\nvote: b > a\nvote: a > b\n");
    assert_eq!(code(&pwsolve(&["solve-pw", &p])), 0);
    assert_eq!(code(&pwsolve(&["solve-pw", &p, "--semantics", "unique"])), 1);
}

#[test]
fn budget_exhaustion_exits_three() {
    let dir = TempDir::new().unwrap();
    let inst = write(&dir, "i.3dm", "q: 2\ntriple: x1 y1 z1\ntriple: x2 y2 z2\ntriple: x1 y2 z1\ntriple: x2 y1 z2\n");
    let prof = path(&dir, "i.prof");
    assert_eq!(code(&pwsolve(&["reduce", &inst, "--variant", "2approval", "-o", &prof])), 0);
    let o = pwsolve(&["solve-pw", &prof, "--budget", "3"]);
    assert_eq!(code(&o), 3);
    let o = pwsolve(&["solve-pw", &prof, "--oracle", "--budget", "10"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn usage_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.prof", "candidates: a,b\nvote: a > c\n");
    let o = pwsolve(&["solve-pw", &bad, "--rule", "borda", "--candidate", "a"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));

    let ok = write(&dir, "ok.prof", "candidates: a,b\nvote: a > b\n");
    assert_eq!(code(&pwsolve(&["solve-pw", &ok, "--rule", "nonsense", "--candidate", "a"])), 2);
    assert_eq!(code(&pwsolve(&["solve-pw", &ok, "--candidate", "a"])), 2);
    assert_eq!(code(&pwsolve(&["solve-pw", &ok, "--rule", "borda", "--candidate", "zz"])), 2);
    assert_eq!(code(&pwsolve(&["solve-pw", &path(&dir, "missing.prof"), "--rule", "borda"])), 2);
    assert_eq!(code(&pwsolve(&["gen-3dm", "--q", "2"])), 2);
    assert_eq!(code(&pwsolve(&["reduce", &ok, "--variant", "2approval", "-o", &path(&dir, "x")])), 2);
}

#[test]
fn classify_rule_reports_dispatch() {
    let o = pwsolve(&["classify-rule", "borda"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("rule: borda"));
    assert!(out.lines().any(|l| l.starts_with("solver:") && l.contains("search")));
    let o = pwsolve(&["classify-rule", "plurality"]);
    assert!(stdout(&o).lines().any(|l| l.starts_with("solver:") && l.contains("plurality")));
    assert_eq!(code(&pwsolve(&["classify-rule", "R(1,1)", "--horizon", "12"])), 0);
    assert_eq!(code(&pwsolve(&["classify-rule", "bogus"])), 2);
}

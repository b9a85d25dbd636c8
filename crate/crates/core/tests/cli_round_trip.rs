//! The `lpkit` binary end to end: files, stdin, exit statuses and output
//! stability between subcommands.

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn lpkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lpkit")).args(args).output().expect("binary runs")
}

fn lpkit_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_lpkit"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("lpkit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

const ETA5: &str = r#"{"field":{"kind":"rational"},"d":3,"theta":["-2","3","7","12"],"theta_star":["25","14","10","11"],"varphi":["77","36","-7"],"phi":["-77","-36","7"]}"#;

#[test]
fn generate_file_validate_analyze() {
    let path = scratch("eta5.json");
    let path_str = path.to_str().unwrap();
    let gen = lpkit(&[
        "generate",
        "case1",
        "--field",
        "rational",
        "--d",
        "3",
        "--params",
        "q=2,eta=5,mu=1,h=-1,eta_star=0,mu_star=1,h_star=3,tau=0",
        "--output",
        path_str,
    ]);
    assert_eq!(gen.status.code(), Some(0));
    assert!(gen.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written.trim_end(), ETA5);

    let validated = lpkit(&["validate", path_str]);
    assert_eq!(validated.status.code(), Some(0));
    assert_eq!(stdout(&validated).trim_end(), r#"{"verdict":"valid","failures":[]}"#);

    let analyzed = lpkit(&["analyze", path_str]);
    assert_eq!(analyzed.status.code(), Some(0));
    let text = stdout(&analyzed);
    assert!(text.starts_with(r#"{"a":["5","5","5","5"]"#), "{text}");
    assert!(text.contains(r#""case":"CaseI","beta":"5/2""#), "{text}");
    assert!(text.contains(r#""essentially_bipartite":true,"xi":"5""#), "{text}");
    assert_eq!(stdout(&lpkit(&["analyze", ETA5])), text);
}

#[test]
fn stdin_input() {
    let out = lpkit_stdin(&["verify", "-"], ETA5);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with(r#"{"holds":true,"case":"CaseI""#));
}

#[test]
fn exit_statuses() {
    let bad = ETA5.replace(r#"["77","36","-7"]"#, r#"["77","36","-8"]"#);
    let invalid = lpkit(&["validate", &bad]);
    assert_eq!(invalid.status.code(), Some(1));
    assert!(stdout(&invalid).starts_with(r#"{"verdict":"invalid","failures":[{"condition":"#));
    for sub in ["analyze", "matrices", "verify"] {
        let out = lpkit(&[sub, &bad]);
        assert_eq!(out.status.code(), Some(1), "{sub}");
        assert!(stdout(&out).contains(r#""verdict":"invalid""#), "{sub}");
    }
    assert_eq!(lpkit(&["validate", "{"]).status.code(), Some(2));
    assert_eq!(lpkit(&["validate", "/nonexistent/array.json"]).status.code(), Some(2));
    assert_eq!(
        lpkit(&["validate", &ETA5.replace(r#""kind":"rational""#, r#""kind":"prime","p":9"#)]).status.code(),
        Some(2)
    );
    assert_eq!(lpkit(&["sweep", "--samples", "many"]).status.code(), Some(2));
}

#[test]
fn matrices_subcommand() {
    let d1 =
        r#"{"field":{"kind":"rational"},"d":1,"theta":["0","1"],"theta_star":["0","1"],"varphi":["1"],"phi":["2"]}"#;
    let out = lpkit(&["matrices", d1]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out).trim_end(),
        r#"{"A":[["0","0"],["1","1"]],"A_star":[["0","1"],["0","1"]],"P_star":[["1","1"],["0","1"]],"T":[["-1","-2"],["1","2"]],"P":[["1","0"],["-1","1"]],"T_star":[["-1","1"],["-2","2"]]}"#
    );
}

#[test]
fn finite_field_generation_round_trip() {
    let gen = lpkit(&[
        "generate",
        "case5",
        "--field",
        "binary:2",
        "--params",
        "theta0=0,theta0_star=0,h=1,s=w,h_star=1,s_star=w,r=w",
    ]);
    assert_eq!(gen.status.code(), Some(0));
    let json = stdout(&gen);
    assert_eq!(
        json.trim_end(),
        r#"{"field":{"kind":"binary","k":2},"d":3,"theta":["0","w+1","1","w"],"theta_star":["0","w+1","1","w"],"varphi":["w","1","w"],"phi":["w+1","1","w+1"]}"#
    );
    let analyzed = stdout(&lpkit(&["analyze", json.trim_end()]));
    assert!(analyzed.contains(r#""case":"CaseV","beta":"0""#), "{analyzed}");
    assert!(analyzed.contains(r#""balanced":false"#), "{analyzed}");
}

#[test]
fn sweep_is_reproducible_and_oracle_env_is_honoured() {
    let args =
        ["sweep", "--seed", "42", "--samples", "20", "--families", "case1,case4,d2", "--fields", "rational,prime:11"];
    let first = lpkit(&args);
    let second = Command::new(env!("CARGO_BIN_EXE_lpkit")).args(args).env("LPKIT_DEBUG_ORACLE", "1").output().unwrap();
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    assert!(stdout(&first).contains(r#""failures":0,"first_failure":null"#));
}

//! End-to-end tests of the binary: exit codes, JSON shape, stdin input
//! and byte-stable output.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lnd3"))
}

fn session(name: &str) -> String {
    format!("{}/../../sessions/{}", env!("CARGO_MANIFEST_DIR"), name)
}

fn json_of(output: &Output) -> serde_json::Value {
    serde_json::from_slice(&output.stdout).expect("stdout is JSON")
}

#[test]
fn degd_on_circle_family() {
    let out = bin()
        .args(["degd", &session("ex2.lnd"), "Z", "--d", "0", "--json-only"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["result"]["result"], 2);
    assert!(out.stderr.is_empty(), "--json-only must silence stderr");
}

#[test]
fn run_executes_embedded_queries() {
    let out = bin()
        .args(["run", &session("tr.lnd"), "--json-only"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    let results = v["results"].as_array().unwrap();
    assert_eq!(results.len(), 3);
    assert_eq!(results[0]["result"]["triangular"], true);
    assert_eq!(results[0]["result"]["deg_z"], 3);
    assert_eq!(results[1]["result"]["jumps"], serde_json::json!([0, 1, 3]));
    assert_eq!(
        results[2]["result"]["degrees"],
        serde_json::json!([0, 1, 3])
    );
}

#[test]
fn ntr_session_normal_form() {
    let out = bin()
        .args(["run", &session("ntr.lnd"), "--json-only"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    let results = v["results"].as_array().unwrap();
    assert_eq!(results[0]["result"]["h"], "Y^2");
    assert_eq!(results[0]["result"]["z_tilde"], "X*Z + Y^2");
    assert_eq!(
        results[1]["result"]["vertices"],
        serde_json::json!([[0, 0], [2, 0], [0, 1]])
    );
    assert_eq!(results[2]["result"]["local_slice"], true);
}

#[test]
fn stdin_session() {
    let mut child = bin()
        .args(["degd", "-", "z"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(b"ring Q\nvars x y z\nD x = 0\nD y = x\nD z = y\n")
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["result"]["result"], 2);
}

#[test]
fn exit_codes() {
    // Input error: undeclared identifier.
    let out = bin()
        .args(["degd", &session("tr.lnd"), "nope", "--json-only"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    // Bound exceeded: an eigenvector never certifies.
    let mut child = bin()
        .args(["nilpotent", "-", "--bound", "8", "--json-only"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(b"ring Q\nvars x y z\nD x = x\nD y = 0\nD z = 0\n")
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(3));

    // Missing file.
    let out = bin()
        .args(["rank", "no-such-file.lnd", "--json-only"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reports_are_byte_stable() {
    let run = || {
        bin()
            .args(["filtration", &session("ex2.lnd"), "--d", "1", "--json-only"])
            .output()
            .unwrap()
    };
    let a = run();
    let b = run();
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), Some(0));
}

#[test]
fn verify_paper_examples() {
    for (args, expect) in [
        (vec!["verify-paper", "--example", "3"], 0),
        (vec!["verify-paper", "--example", "tr", "--d", "3"], 0),
        (
            vec!["verify-paper", "--example", "ntr", "--p", "2", "--q", "3"],
            0,
        ),
        (vec!["verify-paper", "--example", "9"], 2),
    ] {
        let mut full = args.clone();
        full.push("--json-only");
        let out = bin().args(&full).output().unwrap();
        assert_eq!(
            out.status.code(),
            Some(expect),
            "args {:?}: {}",
            args,
            String::from_utf8_lossy(&out.stdout)
        );
    }
}

#[test]
fn example_one_session_replays() {
    let out = bin()
        .args(["run", &session("ex1.lnd"), "--json-only"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    let results = v["results"].as_array().unwrap();
    assert_eq!(
        results[0]["result"]["orders"],
        serde_json::json!([3, 7, 11])
    );
    assert_eq!(results[1]["result"]["in_kernel"], true);
    assert_eq!(results[2]["result"]["degree"], 4);
}

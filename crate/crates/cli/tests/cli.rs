use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn symskew(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symskew")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

#[test]
fn verify_theorems() {
    let out = symskew(&["verify", "--algebra", "mat:4:symplectic", "--theorem", "s2_equals_r"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("Verified"));

    let out = symskew(&["verify", "--algebra", "quat", "--theorem", "k2_equals_r", "--format", "json"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["reports"][0]["status"], "Verified");

    // Without an expectations file a failed hypothesis counts against the run.
    let out = symskew(&["verify", "--algebra", "mat:2:transpose", "--theorem", "all"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("HypothesisFailed"));
    assert!(!stdout(&out).contains("ConclusionFailed"));
}

#[test]
fn verify_with_expectations() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("expect.txt");
    fs::write(&path, "s2_equals_r HypothesisFailed\n").unwrap();
    let p = path.to_str().unwrap();
    let out = symskew(&["verify", "--algebra", "mat:2:symplectic", "--theorem", "s2_equals_r", "--expect", p]);
    assert_eq!(code(&out), 0);
    fs::write(&path, "s2_equals_r Verified\n").unwrap();
    let out = symskew(&["verify", "--algebra", "mat:2:symplectic", "--theorem", "s2_equals_r", "--expect", p]);
    assert_eq!(code(&out), 1);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["verify", "--algebra", "mat:3:symplectic", "--theorem", "s2_equals_r"][..],
        &["verify", "--algebra", "mat:3:transpose", "--theorem", "nope"],
        &["check", "--algebra", "mat:3:transpose", "--criterion", "zz", "--witness", "paper:s2_transpose"],
        &["search", "--algebra", "mat:3:transpose", "--criterion", "first", "--budget", "lots"],
        &["identity", "--corpus", "/definitely/not/here.star"],
        &["eval", "--algebra", "quat", "--expr", "S^"],
        &["verify", "--algebra", "mat:2:transpose", "--field", "gf:4", "--theorem", "all"],
    ] {
        let out = symskew(args);
        assert_eq!(code(&out), 2, "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn check_named_and_explicit_witnesses() {
    let out = symskew(&["check", "--algebra", "mat:3:transpose", "--criterion", "first", "--witness", "paper:s2_transpose"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("pass"));

    let out = symskew(&[
        "check", "--algebra", "mat:2:transpose", "--criterion", "first", "--witness", "elements:e11-e22,e12+e21",
    ]);
    assert_eq!(code(&out), 0);

    let out = symskew(&[
        "check", "--algebra", "mat:2:transpose", "--criterion", "first", "--witness", "elements:e11,e11", "--format", "json",
    ]);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["verdict"], "fail");
}

#[test]
fn search_outcomes() {
    let out = symskew(&["search", "--algebra", "mat:3:transpose", "--criterion", "first", "--budget", "all"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("witness found"));

    let out = symskew(&["search", "--algebra", "mat:2:symplectic", "--criterion", "first", "--budget", "all"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("exhausted"));

    let out = symskew(&["search", "--algebra", "mat:3:transpose", "--criterion", "g", "--budget", "all", "--format", "json"]);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["found"], false);
}

#[test]
fn json_output_is_stable() {
    let args = ["decompose", "--algebra", "mat:4:transpose", "--scheme", "s2", "--seed", "7", "--format", "json"];
    let a = symskew(&args);
    let b = symskew(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn decompose_then_verify_certificate() {
    let dir = tempfile::tempdir().unwrap();
    for (alg, scheme) in [
        ("mat:2:transpose", "s3"),
        ("mat:4:transpose", "s2"),
        ("mat:2:symplectic", "k_plus_k2"),
        ("mat:4:transpose", "k_plus_k2_k3"),
    ] {
        let path = dir.path().join(format!("{scheme}.json"));
        let p = path.to_str().unwrap();
        let out = symskew(&["decompose", "--algebra", alg, "--scheme", scheme, "--seed", "3", "--out", p]);
        assert_eq!(code(&out), 0, "{alg} {scheme}: {}", String::from_utf8_lossy(&out.stderr));
        let out = symskew(&["verify-certificate", p]);
        assert_eq!(code(&out), 0, "{alg} {scheme}");
        assert!(stdout(&out).contains("valid"));

        let mut cert: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
        cert["target"] = cert["witness"]["x"].clone();
        fs::write(&path, serde_json::to_string(&cert).unwrap()).unwrap();
        let out = symskew(&["verify-certificate", p]);
        assert_eq!(code(&out), 1, "{alg} {scheme} accepted a tampered target");
    }
}

#[test]
fn decompose_named_target_and_obstruction() {
    let out = symskew(&[
        "decompose", "--algebra", "mat:2:transpose", "--scheme", "s3", "--witness", "paper:s3_transpose_even",
        "--target", "e12",
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("5 terms; valid"));

    let out = symskew(&["decompose", "--algebra", "mat:2:transpose", "--scheme", "k_plus_k2", "--seed", "1"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("obstruction"));
}

#[test]
fn identity_corpora() {
    let out = symskew(&["identity"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains(", 0 failing"));

    let out = symskew(&["identity", "--mutated", "--format", "json"]);
    assert_eq!(code(&out), 1);
    let v = json(&out);
    assert_eq!(v["failing"], v["identities"].as_array().unwrap().len());

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.star");
    fs::write(&path, "sym a\na + = b\n").unwrap();
    let out = symskew(&["identity", "--corpus", path.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains(":2"));
}

#[test]
fn eval_set_expressions() {
    let out = symskew(&["eval", "--algebra", "mat:4:transpose", "--expr", "KS+SK", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["dim"], 15);

    let out = symskew(&["eval", "--algebra", "mat:3:transpose", "--expr", "S^2", "--field", "gf:5"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("(all of R)"));
}

//! End-to-end checks of the command line driver: pinned output documents,
//! byte-reproducibility, and exit codes.

use std::process::{Command, Output, Stdio};

fn aflan(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_aflan"))
        .args(args)
        .stdin(Stdio::null())
        .output()
        .expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = aflan(args);
    assert!(
        out.status.success(),
        "command {:?} failed: {}",
        args,
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn orb_rank1_split_document() {
    let doc: serde_json::Value =
        serde_json::from_str(&stdout_of(&["orb", "--q", "3", "--rank1-split", "--M", "2"]))
            .unwrap();
    assert_eq!(doc["value0"], "1");
    assert_eq!(doc["poly"]["0"], "1");
    assert_eq!(doc["poly"]["-1"], "-1");
    assert_eq!(doc["poly"]["-2"], "1");
}

#[test]
fn dorb_rank1_split_document() {
    let doc: serde_json::Value =
        serde_json::from_str(&stdout_of(&["dorb", "--q", "3", "--rank1-split", "--M", "3"]))
            .unwrap();
    assert_eq!(doc["deriv0"]["logs"]["3"], "-2");
    assert_eq!(doc["deriv0"]["real"], 0.0);
}

#[test]
fn output_is_byte_identical_across_runs() {
    for args in [
        vec!["orb", "--q", "3", "--rank1-split", "--M", "4"],
        vec!["cm-check", "--v-min", "-3", "--v-max", "5"],
        vec!["green", "--fn", "ei", "--x", "-2.5"],
        vec!["weil-check", "--q", "3", "--d", "1"],
    ] {
        let a = stdout_of(&args);
        let b = stdout_of(&args);
        assert_eq!(a, b, "{args:?} not reproducible");
    }
}

#[test]
fn validation_errors_exit_2() {
    let out = aflan(&["orb", "--q", "12", "--rank1-split", "--M", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = aflan(&["orb", "--q", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let out = aflan(&["green", "--fn", "ei", "--x", "1.0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn lattice_sum_via_stdin_file_and_inline() {
    let orbit = r#"{"gamma":[[[["1"],["0"]]]],"u1":[["9"]],"u2":[["1"]]}"#;
    // inline
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&[
        "orb",
        "--q",
        "3",
        "--lattice-sum",
        "--input",
        orbit,
    ]))
    .unwrap();
    assert_eq!(doc["value0"], "1");
    assert_eq!(doc["omega"], 1);
    assert_eq!(doc["side"], 1);
    // @file
    let dir = std::env::temp_dir().join("aflan-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("orbit.json");
    std::fs::write(&path, orbit).unwrap();
    let via_file = stdout_of(&[
        "orb",
        "--q",
        "3",
        "--lattice-sum",
        "--input",
        &format!("@{}", path.display()),
    ]);
    let inline = stdout_of(&["orb", "--q", "3", "--lattice-sum", "--input", orbit]);
    assert_eq!(via_file, inline);
}

#[test]
fn csv_has_header_row() {
    let out = stdout_of(&["green", "--fn", "ei", "--x", "-1.0", "--csv"]);
    let mut lines = out.lines();
    assert_eq!(lines.next().unwrap(), "inputs.x,value");
    assert!(lines.next().unwrap().starts_with("-1.0,"));
}

#[test]
fn report_envelope() {
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&[
        "orb",
        "--q",
        "3",
        "--rank1-split",
        "--M",
        "0",
        "--report",
    ]))
    .unwrap();
    assert_eq!(doc["status"], "ok");
    assert_eq!(doc["outputs"]["value0"], "1");
    assert!(doc.get("elapsed_ms").is_none());
}

#[test]
fn match_reports_invariants() {
    let orbit = r#"{"gamma":[[[["1"],["0"]]]],"u1":[["3"]],"u2":[["1"]]}"#;
    let doc: serde_json::Value =
        serde_json::from_str(&stdout_of(&["match", "--q", "3", "--input", orbit])).unwrap();
    assert_eq!(doc["is_rs"], true);
    assert_eq!(doc["omega"], -1);
    assert_eq!(doc["side"], -1);
}

#[test]
fn assemble_partial_derivative_table() {
    let table = r#"[
        {"orbit":"o1","place":"w1","value0":"0","deriv0":{"real":0.0,"logs":{"3":"-1"}}},
        {"orbit":"o1","place":"w2","value0":"1","deriv0":{"real":0.0,"logs":{}}}
    ]"#;
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&[
        "dorb", "--q", "3", "--assemble", "--place", "w1", "--input", table,
    ]))
    .unwrap();
    assert_eq!(doc["dJ"]["logs"]["3"], "-1");
    // sum over places equals the product-rule total
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&[
        "dorb", "--q", "3", "--assemble", "--input", table,
    ]))
    .unwrap();
    assert_eq!(doc["total"]["logs"]["3"], "-1");
}

#[test]
fn diff_rejects_coherent_family() {
    let fam = r#"{"places":[{"id":"a","split":false,"eps":1,"zeta_sign":1}]}"#;
    let out = aflan(&["diff", "--input", fam]);
    assert_eq!(out.status.code(), Some(2));
}

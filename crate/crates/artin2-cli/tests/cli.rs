//! End-to-end checks of the binary: expected outputs, exit codes, and
//! byte-stable artifacts.

use std::path::Path;
use std::process::{Command, Output};

fn artin2(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_artin2"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = artin2(args);
    assert!(
        out.status.success(),
        "expected success for {args:?}, stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn exit_code(args: &[&str]) -> i32 {
    artin2(args).status.code().expect("no signal")
}

#[test]
fn reduce_examples() {
    assert_eq!(stdout(&["reduce", "--f", "1", "x^3"]), "0\n");
    assert_eq!(stdout(&["reduce", "--f", "2", "g"]), "a0\n");
    // x^-4 + x^-2 = wp(x^-2) lies in wp(K)
    assert_eq!(stdout(&["reduce", "--f", "1", "x^-4 + x^-2"]), "0\n");
    assert_eq!(stdout(&["reduce", "--f", "1", "x^-4"]), "x^-1\n");
}

#[test]
fn reduce_witness_verdict() {
    // the odd exponent keeps its coefficient; x^-2 folds to x^-1
    let out = stdout(&["reduce", "--f", "2", "--witness", "g*x^-5 + x^-2 + x^4"]);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("g*x^-5 + x^-1"));
    assert!(lines.next().unwrap().starts_with("witness: ok"));
}

#[test]
fn symbol_examples() {
    assert_eq!(
        stdout(&["symbol", "--f", "1", "1", "x"]),
        "[a,b) = 1\nchi_a(b) = -1\n"
    );
    assert_eq!(
        stdout(&["symbol", "--f", "1", "1", "x^2"]),
        "[a,b) = 0\nchi_a(b) = +1\n"
    );
    assert_eq!(
        stdout(&["symbol", "--f", "1", "x^2 + x", "x"]),
        "[a,b) = 0\nchi_a(b) = +1\n"
    );
}

#[test]
fn classify_examples() {
    let out = stdout(&["classify", "--f", "1", "1", "x^-1"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["case"], "1");
    assert_eq!(v["breaks"][0], 1);
    assert_eq!(v["formal_degree"], "1");

    let out = stdout(&["classify", "--f", "1", "x^-1", "x^-3"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["case"], "2.2");
    assert_eq!(v["conductor_paper"], 12);
    assert_eq!(v["conductor_filtration"], 10);
    assert_eq!(v["formal_degree"], "16");

    let out = stdout(&["classify", "--f", "2", "x^-1", "g*x^-1"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["case"], "2.1");
    assert_eq!(v["breaks"][0], 1);
}

#[test]
fn census_examples() {
    let out = stdout(&["census", "--f", "2", "--nmax", "1"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let case1 = &v["tallies"][0];
    assert_eq!(case1["case"], "1");
    assert_eq!(case1["count"], 3); // q - 1

    let out = stdout(&["census", "--f", "1", "--nmax", "5"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    for tally in v["tallies"].as_array().unwrap() {
        assert_ne!(tally["case"], "2.1");
    }

    let out = stdout(&["census", "--f", "1", "--nmax", "0"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["total_planes"], 0);
    assert_eq!(v["tallies"].as_array().unwrap().len(), 0);
}

#[test]
fn census_dot_appends_diagram() {
    let out = stdout(&["census", "--f", "1", "--nmax", "1", "--dot"]);
    assert!(out.starts_with("{\n"));
    assert!(out.contains("graph tempered_dual {"));
}

#[test]
fn census_text_table() {
    let out = stdout(&["census", "--f", "2", "--nmax", "1", "--output", "text"]);
    assert!(out.contains("field F_2^2 (modulus g^2+g+1)"));
    assert!(out.contains("7 planes"));
    let case1 = out.lines().find(|l| l.starts_with("1 ")).unwrap();
    assert!(case1.contains('3'), "q-1 count in {case1:?}");
}

#[test]
fn spectrum_json_counts() {
    let out = stdout(&["spectrum", "--f", "1", "--nmax", "1", "--output", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["quadratic_cosets"], 3);
    assert_eq!(v["principal_arcs"], 2);
    assert_eq!(v["double_points"], 3);
    assert_eq!(v["supercuspidal_isolated_points"], 4);
}

#[test]
fn spectrum_nmax0_shape() {
    let out = stdout(&["spectrum", "--f", "1", "--nmax", "0"]);
    assert_eq!(out.matches("subgraph arc_").count(), 1);
    assert_eq!(out.matches("isolated=\"true\"").count(), 1);
    assert_eq!(out.matches("subgraph packet_").count(), 0);
}

#[test]
fn triangle_cases() {
    let out = stdout(&["triangle", "--f", "1", "x^-1"]);
    assert!(out.contains("pi[x^-1]+"));
    let out = stdout(&["triangle", "--f", "1", "0"]);
    assert!(out.contains("St"));
    let out = stdout(&["triangle", "--f", "1"]);
    assert!(out.contains("(z, triv)"));
    let out = stdout(&["triangle", "--f", "1", "--output", "json", "x^-1"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["eq_points"].as_array().unwrap().len(), 2);
}

#[test]
fn custom_modulus_accepted() {
    // Tr(g) = 0 over F_8 but Tr(1) = 1 (f odd)
    assert_eq!(
        stdout(&["reduce", "--f", "3", "--modulus", "g^3+g+1", "g"]),
        "0\n"
    );
    assert_eq!(
        stdout(&["reduce", "--f", "3", "--modulus", "g^3+g^2+1", "1"]),
        "a0\n"
    );
}

#[test]
fn exit_codes() {
    // 2: parse errors
    assert_eq!(exit_code(&["reduce", "--f", "1", "x^"]), 2);
    assert_eq!(exit_code(&["reduce", "--f", "1", "y + 1"]), 2);
    // 3: precision exhaustion (the residue of a high-valuation argument
    // falls outside a narrow window)
    assert_eq!(
        exit_code(&["symbol", "--f", "1", "--precision", "16", "x^-1", "x^15"]),
        3
    );
    // precision below the floor is a plain domain error
    assert_eq!(
        exit_code(&["reduce", "--f", "1", "--precision", "8", "1"]),
        1
    );
    // 4: degenerate plane
    assert_eq!(exit_code(&["classify", "--f", "1", "x^-1", "x^-1"]), 4);
    assert_eq!(exit_code(&["classify", "--f", "1", "x^-1", "x^2"]), 4);
    // 5: budget exceeded
    assert_eq!(exit_code(&["census", "--f", "3", "--nmax", "17"]), 5);
    // reducible modulus -> 1
    assert_eq!(
        exit_code(&["reduce", "--f", "2", "--modulus", "g^2+1", "1"]),
        1
    );
}

#[test]
fn byte_identical_runs_match_golden_files() {
    let census_args = ["census", "--f", "2", "--nmax", "3"];
    let spectrum_args = ["spectrum", "--f", "2", "--nmax", "3"];
    let census_runs: Vec<String> = (0..3).map(|_| stdout(&census_args)).collect();
    let spectrum_runs: Vec<String> = (0..3).map(|_| stdout(&spectrum_args)).collect();
    assert!(census_runs.windows(2).all(|w| w[0] == w[1]));
    assert!(spectrum_runs.windows(2).all(|w| w[0] == w[1]));

    let golden_dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../artin2/tests/golden");
    let census_golden = std::fs::read_to_string(golden_dir.join("census_f2_n3.json")).unwrap();
    let spectrum_golden = std::fs::read_to_string(golden_dir.join("spectrum_f2_n3.dot")).unwrap();
    assert_eq!(census_runs[0], census_golden);
    assert_eq!(spectrum_runs[0], spectrum_golden);
}

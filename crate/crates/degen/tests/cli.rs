//! End-to-end checks of the command-line interface: exit codes, the
//! documented examples, and report determinism.

use std::process::Command;

fn degen() -> Command {
    Command::new(env!("CARGO_BIN_EXE_degen"))
}

#[test]
fn wc_example() {
    let out = degen()
        .args(["wc", "--family", "A", "--rank", "2", "--cuts", "1"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("[2,3,1]"), "{text}");
    assert!(text.contains("3 inversions"), "{text}");
}

#[test]
fn invalid_rank_exits_2() {
    let out = degen()
        .args(["roots", "--family", "D", "--rank", "3"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_flag_exits_2() {
    let out = degen()
        .args(["roots", "--family", "A", "--rank", "2", "--bogus"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn roots_lists_positive_roots() {
    let out = degen()
        .args(["roots", "--family", "B", "--rank", "2"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("4 positive roots"), "{text}");
    assert!(text.contains("(1,~2)"), "{text}");
}

#[test]
fn char_dimension_matches() {
    let out = degen()
        .args([
            "char", "--family", "B", "--rank", "3", "--cuts", "1", "--lambda", "0,0,1",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("demazure dimension 8"), "{text}");
}

#[test]
fn polytope_count() {
    let out = degen()
        .args([
            "polytope", "--family", "A", "--rank", "2", "--lambda", "1,1",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "8");
}

#[test]
fn membership_and_relint_point() {
    let out = degen()
        .args([
            "cone",
            "membership",
            "--family",
            "A",
            "--rank",
            "2",
            "--point",
            "2,2,2",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "true");

    let out = degen()
        .args([
            "cone",
            "relint-point",
            "--family",
            "A",
            "--rank",
            "2",
            "--cuts",
            "1",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
}

#[test]
fn filtration_table() {
    let out = degen()
        .args([
            "filtration",
            "--family",
            "A",
            "--rank",
            "2",
            "-k",
            "1",
            "--point",
            "1,2,1",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("degree,dimension"), "{text}");
}

#[test]
fn verify_tiny_json_is_deterministic_and_passes() {
    let run = || {
        degen()
            .args([
                "verify",
                "--families",
                "A",
                "--max-rank",
                "2",
                "--suite",
                "facets,weylgroup",
                "--format",
                "json",
                "--no-timestamp",
            ])
            .output()
            .unwrap()
    };
    let a = run();
    let b = run();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout, "reports must be byte-identical");
    let text = String::from_utf8(a.stdout).unwrap();
    assert!(text.contains("\"schema\": 1"));
    assert!(!text.contains("timestamp"));
}

#[test]
fn verify_csv_header() {
    let out = degen()
        .args([
            "verify",
            "--families",
            "A",
            "--max-rank",
            "1",
            "--suite",
            "facets",
            "--format",
            "csv",
            "--no-timestamp",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("suite,family,rank,cuts,case,expected,computed,pass,runtime_ms"));
}

#[test]
fn env_variables_supply_defaults() {
    let out = degen()
        .env("DEGEN_FAMILY", "A")
        .env("DEGEN_RANK", "2")
        .args(["roots"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("3 positive roots"), "{text}");
}

#[test]
fn flags_win_over_env() {
    let out = degen()
        .env("DEGEN_RANK", "5")
        .args(["roots", "--family", "A", "--rank", "2"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("3 positive roots"), "{text}");
}

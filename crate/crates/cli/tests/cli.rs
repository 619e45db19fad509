use std::path::PathBuf;
use std::process::{Command, Output};

use circavoid::verify::PUBLISHED_A;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_circavoid"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("circavoid-{}-{name}", std::process::id()))
}

#[test]
fn count_examples() {
    assert_eq!(stdout(&["count", "--n", "10", "--engine", "dp"]), "11857\n");
    assert_eq!(stdout(&["count", "--n", "2"]), "1\n");
    let all = stdout(&["count", "--n", "8", "--engine", "all"]);
    assert_eq!(all, "oracle 690\ndp     690\ngf     690\nMATCH\n");
}

#[test]
fn count_other_patterns_needs_oracle() {
    assert_eq!(stdout(&["count", "--n", "5", "--pattern", "123", "--engine", "oracle"]), "9\n");
    assert_eq!(stdout(&["count", "--n", "4", "--pattern", "1-2-3", "--linear", "--engine", "oracle"]), "14\n");
    let out = run(&["count", "--n", "5", "--pattern", "123"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["count", "--n", "5", "--pattern", "12x"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn oracle_cap_is_enforced() {
    let out = run(&["count", "--n", "11", "--engine", "oracle"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("limit 10"));
    let out = run(&["count", "--n", "8", "--engine", "oracle", "--oracle-cap", "7"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(
        stdout(&["count", "--n", "8", "--engine", "oracle", "--oracle-cap", "7", "--allow-large"]),
        "690\n"
    );
}

#[test]
fn table_reproduces_published_values() {
    let csv = stdout(&["table", "--N", "40", "--format", "csv"]);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "n,value");
    assert_eq!(lines.len(), 41);
    for (k, want) in PUBLISHED_A.iter().enumerate() {
        assert_eq!(lines[k + 1], format!("{},{want}", k + 1));
    }
    assert_eq!(stdout(&["table", "--N", "1", "--format", "csv"]), "n,value\n1,1\n");
}

#[test]
fn tables_round_trip_byte_for_byte() {
    for format in ["plain", "csv", "json"] {
        for seq in ["a", "b", "v"] {
            let text = stdout(&["table", "--N", "35", "--sequence", seq, "--format", format]);
            let path = scratch(&format!("{seq}.{format}"));
            std::fs::write(&path, &text).unwrap();
            let again = stdout(&[
                "table",
                "--input",
                path.to_str().unwrap(),
                "--sequence",
                seq,
                "--format",
                format,
            ]);
            std::fs::remove_file(&path).ok();
            assert_eq!(again, text, "{seq} {format}");
        }
    }
}

#[test]
fn json_schema_uses_strings() {
    let json = stdout(&["table", "--N", "2", "--format", "json"]);
    assert_eq!(json, "{\"sequence\":\"a\",\"values\":[{\"n\":1,\"value\":\"1\"},{\"n\":2,\"value\":\"2\"}]}\n");
}

#[test]
fn series_examples() {
    assert_eq!(stdout(&["series", "--gf", "A", "--order", "10"]), "0,1,1,2,5,15,50,180,690,2792,11857\n");
    let a = stdout(&["series", "--gf", "A", "--order", "12"]);
    let a11 = stdout(&["series", "--gf", "A", "--v", "1", "--u", "1", "--order", "12"]);
    assert_eq!(a, a11);
}

fn coeffs(text: &str) -> Vec<i64> {
    text.trim().split(',').map(|c| c.parse().unwrap()).collect()
}

#[test]
fn v0_minus_x_v1_minus_x_vanishes() {
    let v0 = coeffs(&stdout(&["series", "--gf", "V0", "--order", "14"]));
    let v1 = coeffs(&stdout(&["series", "--gf", "V1", "--order", "14"]));
    for k in 0..=14 {
        let shifted = if k == 0 { 0 } else { v1[k - 1] };
        let x = i64::from(k == 1);
        assert_eq!(v0[k] - shifted - x, 0, "x^{k}");
    }
}

#[test]
fn degenerate_specialization_fails() {
    let out = run(&["series", "--gf", "A", "--v", "2", "--u", "1", "--order", "6"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("degenerate"));
}

#[test]
fn output_is_exact() {
    let text = stdout(&["series", "--gf", "C1u", "--u", "1/3", "--order", "8"]);
    assert!(text.trim().chars().all(|c| c.is_ascii_digit() || c == ',' || c == '/' || c == '-'), "{text}");
    assert!(text.contains('/'));
}

#[test]
fn conjecture_report() {
    let text = stdout(&["conjectures", "--N", "30"]);
    assert!(text.contains("checked, not proven"));
    assert!(text.contains("inequality holds for all n < 30"));
    let two = stdout(&["conjectures", "--N", "2", "--format", "csv"]);
    assert_eq!(two, "n,holds,ratio\n1,true,2\n");
}

#[test]
fn verify_default_passes() {
    let out = run(&["verify"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(out.status.success(), "{text}");
    assert!(!text.contains("FAIL"));
    assert!(text.contains("PASS published table"));
    assert!(text.contains("PASS reduction"));
}

#[test]
fn verify_names_a_corrupted_cell() {
    let out = run(&["verify", "--n", "7", "--N", "12", "--order", "12", "--inject-fault", "c:6:4:3"]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("FAIL oracle vs recurrence: c(6,4,3)"), "{text}");
}

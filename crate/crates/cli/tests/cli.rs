//! End-to-end tests of the `bellnum` binary: wire format, exit codes,
//! determinism, and the JSON round-trip invariant.

use std::process::Command;

use bellnum_cli::record::{OutputRecord, ResultItem};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_bellnum"))
}

fn run_ok(args: &[&str]) -> String {
    let out = bin().args(args).output().expect("binary runs");
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf-8 output")
}

fn integers_with_prefix(rec: &OutputRecord, prefix: &str) -> Vec<String> {
    rec.results
        .iter()
        .filter_map(|r| match r {
            ResultItem::Integer { label, value } if label.starts_with(prefix) => {
                Some(value.clone())
            }
            _ => None,
        })
        .collect()
}

#[test]
fn bell_nine_six_golden_output() {
    let stdout = run_ok(&["bell", "--r", "9", "--s", "6", "--max-n", "4"]);
    let rec = OutputRecord::from_json(stdout.trim()).unwrap();
    assert_eq!(
        integers_with_prefix(&rec, "n="),
        ["1", "1", "207775", "566828686621", "9011375448568566265"]
    );
}

#[test]
fn stirling_classical_row() {
    let stdout = run_ok(&["stirling", "--r", "1", "--s", "1", "--n", "3"]);
    let rec = OutputRecord::from_json(stdout.trim()).unwrap();
    assert_eq!(integers_with_prefix(&rec, "k="), ["1", "3", "1"]);
}

#[test]
fn json_records_roundtrip() {
    for args in [
        vec!["bell", "--r", "3", "--s", "2", "--max-n", "5"],
        vec!["dobinski", "--r", "2", "--s", "2", "--n", "3"],
        vec!["hankel", "--r", "2", "--s", "1", "--max-order", "3"],
        vec!["egf", "--r", "3", "--max-n", "6"],
        vec!["errata"],
    ] {
        let stdout = run_ok(&args);
        for line in stdout.lines() {
            let rec = OutputRecord::from_json(line).expect("parseable record");
            assert_eq!(rec.to_json(), line, "round-trip for {args:?}");
            assert_eq!(rec.schema, bellnum_cli::record::SCHEMA);
        }
    }
}

#[test]
fn output_is_deterministic_without_timing() {
    let args = ["dobinski", "--r", "3", "--s", "1", "--n", "4"];
    let a = run_ok(&args);
    let b = run_ok(&args);
    assert_eq!(a, b);

    let timed = run_ok(&["dobinski", "--r", "3", "--s", "1", "--n", "4", "--timing"]);
    let rec = OutputRecord::from_json(timed.trim()).unwrap();
    assert!(rec.timing_ms.is_some());
    let bare = OutputRecord::from_json(a.trim()).unwrap();
    assert!(bare.timing_ms.is_none());
}

#[test]
fn dobinski_reports_integer_match() {
    let stdout = run_ok(&["dobinski", "--r", "9", "--s", "6", "--n", "2"]);
    let rec = OutputRecord::from_json(stdout.trim()).unwrap();
    let matched = rec
        .results
        .iter()
        .any(|r| matches!(r, ResultItem::Flag { label, value: true } if label == "integer_match"));
    assert!(matched, "expected a true integer_match flag");
}

#[test]
fn csv_format_has_header_and_rows() {
    let stdout = run_ok(&[
        "bell", "--r", "2", "--s", "1", "--max-n", "3", "--format", "csv",
    ]);
    let mut lines = stdout.lines();
    assert_eq!(
        lines.next().unwrap(),
        "command,label,kind,value,extra,error_bound,rigorous"
    );
    assert_eq!(lines.filter(|l| l.starts_with("bell,")).count(), 4);
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("bellnum-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("record.json");
    let out = bin()
        .args(["bell", "--r", "2", "--s", "2", "--max-n", "2", "--out"])
        .arg(&path)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let body = std::fs::read_to_string(&path).unwrap();
    let rec = OutputRecord::from_json(body.trim()).unwrap();
    assert_eq!(integers_with_prefix(&rec, "n="), ["1", "1", "7"]);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["nosuchcommand"],
        vec!["bell", "--r", "2"],
        vec!["bell", "--r", "0", "--s", "1", "--max-n", "2"],
        vec!["bell", "--r", "1", "--s", "2", "--max-n", "2"],
        vec!["verify", "everything"],
        vec!["asympt", "--family", "99", "--n", "5"],
        vec![
            "bell", "--r", "2", "--s", "1", "--max-n", "2", "--bits", "32",
        ],
        vec!["coherent", "--r", "2", "--s", "1", "--z", "oops"],
    ] {
        let out = bin().args(&args).output().unwrap();
        assert_eq!(out.status.code(), Some(2), "args {args:?}");
    }
}

#[test]
fn errata_lists_exactly_four_corrections() {
    let stdout = run_ok(&["errata"]);
    let rec = OutputRecord::from_json(stdout.trim()).unwrap();
    let ids: Vec<&str> = rec
        .results
        .iter()
        .filter_map(|r| match r {
            ResultItem::Note { label, .. } if label.ends_with("/statement") => {
                Some(label.trim_end_matches("/statement"))
            }
            _ => None,
        })
        .collect();
    assert_eq!(
        ids,
        [
            "dobinski-series-inverse-factorial",
            "composite-prefactor",
            "ordered-exponential-sign",
            "asymptotic-subleading-b31"
        ]
    );
    // every entry names at least one verifying test
    for id in ids {
        let has_tests = rec.results.iter().any(|r| match r {
            ResultItem::Note { label, text } => {
                label == &format!("{id}/verified-by") && !text.is_empty()
            }
            _ => false,
        });
        assert!(has_tests, "{id} lacks verifying tests");
    }
}

#[test]
fn verify_small_grid_passes() {
    let out = bin()
        .args(["verify", "all", "--grid", "small"])
        .output()
        .unwrap();
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let stdout = String::from_utf8(out.stdout).unwrap();
    let rec = OutputRecord::from_json(stdout.trim()).unwrap();
    let failures = rec.results.iter().find_map(|r| match r {
        ResultItem::Note { label, text } if label == "failures" => Some(text.clone()),
        _ => None,
    });
    assert_eq!(failures.as_deref(), Some("none"));
}

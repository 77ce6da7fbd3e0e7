//! End-to-end runs of the `nnft` binary.

use std::process::{Command, Output};

use serde_json::Value;

fn nnft(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nnft")).args(args).env_remove("NNFT_THREADS").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let o = nnft(&full);
    assert!(o.status.success(), "{args:?}: {}", stderr(&o));
    serde_json::from_str(&stdout(&o)).unwrap_or_else(|e| panic!("{args:?}: {e}"))
}

#[test]
fn table_csv_has_six_rows() {
    let o = nnft(&["table", "--format", "csv"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut rows = csv::Reader::from_reader(text.as_bytes());
    let expected = [(70, 7), (298, 7), (238, 35), (1090, 35), (1008, 203), (3754, 343)];
    let records: Vec<csv::StringRecord> = rows.records().map(Result::unwrap).collect();
    assert_eq!(records.len(), 6);
    for (r, (ec, u)) in records.iter().zip(expected) {
        assert_eq!(r[2].parse::<u64>().unwrap(), ec);
        assert_eq!(r[3].parse::<u64>().unwrap(), u);
        assert_eq!(&r[10], "true");
        assert_eq!(&r[11], "true");
    }
    assert!(records[5][13].contains("+16%"));
}

#[test]
fn counts_terms_sum_to_seventy() {
    let v = json(&["counts", "--model", "free", "--prep", "none"]);
    assert_eq!(v["schema"], "counts");
    let ec: u64 = v["terms"].as_array().unwrap().iter().filter(|t| t["section"] == "ec").map(|t| t["count"].as_u64().unwrap()).sum();
    assert_eq!(ec, 70);
    assert_eq!(v["ec_count"], 70);
}

#[test]
fn depth_worked_example() {
    let o = nnft(&["depth", "--length", "1e14", "--epsilon", "1e-7", "--pth", "1e-6", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["level"], 3);
}

#[test]
fn depth_above_threshold_is_a_domain_error() {
    let o = nnft(&["depth", "--length", "1e14", "--epsilon", "1e-3", "--model", "swap", "--prep", "inline"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(o.stdout.is_empty());
    assert!(stderr(&o).starts_with("error:"));
}

#[test]
fn usage_errors_name_the_token() {
    let o = nnft(&["counts", "--model", "warp", "--prep", "none"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("warp"));
    assert!(o.stdout.is_empty());

    let o = nnft(&["table", "--bogus-flag"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--bogus-flag"));

    let o = nnft(&["depth", "--length", "1e14", "--epsilon", "1e-7"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn every_subcommand_has_a_schema() {
    let dir = std::env::temp_dir().join(format!("nnft-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("swap.json");
    let file = file.to_str().unwrap();
    let o = nnft(&["expand", "--block", "swap", "--prep", "none", "--out", file, "--format", "json"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let cases: Vec<Vec<&str>> = vec![
        vec!["table"],
        vec!["counts", "--model", "swap", "--prep", "inline"],
        vec!["threshold", "--model", "recnot", "--prep", "none"],
        vec!["logical-error", "--epsilon", "1e-7", "--levels", "3", "--model", "free", "--prep", "none"],
        vec!["depth", "--length", "1e9", "--epsilon", "1e-6", "--model", "free", "--prep", "none"],
        vec!["resources", "--levels", "3", "--prep", "none"],
        vec!["expand", "--block", "ec", "--prep", "inline"],
        vec!["validate", file],
        vec!["simulate", "--scenario", "ec-only", "--epsilon", "1e-2", "--trials", "2000", "--seed", "1"],
        vec!["fault-scan", "--scenario", "ec-only"],
    ];
    for args in cases {
        let v = json(&args);
        assert!(v["schema"].is_string(), "{args:?}");
    }
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn json_and_csv_are_byte_identical_across_runs() {
    for args in [
        vec!["table", "--format", "json"],
        vec!["resources", "--levels", "4", "--prep", "inline", "--format", "csv"],
        vec!["simulate", "--scenario", "cnot-ec", "--epsilon", "1e-2,2e-2", "--trials", "3000", "--seed", "9", "--format", "json"],
    ] {
        assert_eq!(nnft(&args).stdout, nnft(&args).stdout, "{args:?}");
    }
}

#[test]
fn simulate_counts_ignore_thread_count() {
    let base = ["simulate", "--scenario", "ec-only", "--epsilon", "2e-2", "--trials", "20000", "--seed", "77", "--format", "json"];
    let runs: Vec<Vec<u8>> = ["1", "2", "4"]
        .iter()
        .map(|t| {
            let mut args = base.to_vec();
            args.extend(["--threads", t]);
            nnft(&args).stdout
        })
        .collect();
    assert!(runs.windows(2).all(|w| w[0] == w[1]));
    let env = Command::new(env!("CARGO_BIN_EXE_nnft")).args(base).env("NNFT_THREADS", "3").output().unwrap();
    assert_eq!(env.stdout, runs[0]);
    let bad = Command::new(env!("CARGO_BIN_EXE_nnft")).args(base).env("NNFT_THREADS", "lots").output().unwrap();
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn expand_emits_a_valid_circuit_file() {
    let o = nnft(&["expand", "--block", "remote-cnot", "--prep", "none"]);
    assert!(o.status.success());
    let c = nnft::format::parse(&stdout(&o)).unwrap();
    assert_eq!(c.counted_operations(), 5);
    let o = nnft(&["expand", "--block", "ec", "--prep", "none", "--model", "swap"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn validate_reports_violations_and_parse_errors() {
    let dir = std::env::temp_dir().join(format!("nnft-validate-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let far = dir.join("far.json");
    std::fs::write(
        &far,
        r#"{"version": 1, "width": 1, "length": 3, "classical_bits": [],
            "timesteps": [[{"kind": "CNOT", "targets": [[0, 0], [0, 2]]}]]}"#,
    )
    .unwrap();
    let o = nnft(&["validate", far.to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["nn_violations"].as_array().unwrap().len(), 1);
    assert!(stderr(&o).contains("violation"));

    let broken = dir.join("broken.json");
    std::fs::write(&broken, r#"{"width": 1}"#).unwrap();
    let o = nnft(&["validate", broken.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(o.stdout.is_empty());
    assert!(stderr(&o).contains("version"));
    std::fs::remove_dir_all(&dir).unwrap();
}

use std::path::Path;
use std::process::{Command, Output};

use eigencert_core::{arrangement_from_json, build_gmm};

fn eigencert(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eigencert"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).expect("utf8 output")
}

#[test]
fn analyze_output_is_byte_identical_across_runs_and_job_counts() {
    let args = ["analyze", "--builder", "gmm", "--m", "2", "--dim", "4"];
    let first = eigencert(&args);
    let second = eigencert(&args);
    assert_eq!(first.stdout, second.stdout);
    assert!(!first.stdout.is_empty());

    let serial = eigencert(&[
        "analyze",
        "--builder",
        "gmm",
        "--m",
        "2",
        "--dim",
        "4",
        "--jobs",
        "1",
    ]);
    let parallel = eigencert(&[
        "analyze",
        "--builder",
        "gmm",
        "--m",
        "2",
        "--dim",
        "4",
        "--jobs",
        "2",
    ]);
    assert_eq!(serial.stdout, parallel.stdout);
    assert_eq!(first.stdout, parallel.stdout);
}

#[test]
fn edges_output_is_byte_identical() {
    let args = ["edges", "--builder", "gm1", "--m", "2", "--dim", "4"];
    let first = eigencert(&args);
    let second = eigencert(&args);
    assert_eq!(first.stdout, second.stdout);
    let value: serde_json::Value = serde_json::from_str(&stdout_of(&first)).expect("valid json");
    assert!(value["codim2"].is_array());
    assert!(value["codim3"].is_array());
    assert!(value["incidences"].is_array());
}

#[test]
fn build_round_trips_through_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("gmm24.json");
    let out = eigencert(&[
        "build",
        "--builder",
        "gmm",
        "--m",
        "2",
        "--dim",
        "4",
        "--out",
        path.to_str().unwrap(),
    ]);
    let summary = stdout_of(&out);
    assert_eq!(summary.trim(), "degree=12 ambient_dim=4 order=2");

    let text = std::fs::read_to_string(&path).unwrap();
    let parsed = arrangement_from_json(&text).unwrap();
    assert_eq!(parsed, build_gmm(2, 4).unwrap());

    let reanalyzed = eigencert(&[
        "analyze",
        "--builder",
        "file",
        "--input",
        path.to_str().unwrap(),
        "--orders",
        "4",
    ]);
    let report: serde_json::Value =
        serde_json::from_str(&stdout_of(&reanalyzed)).expect("valid json");
    assert_eq!(report["degree"], 12);
}

#[test]
fn builder_examples_have_the_documented_sizes() {
    for (args, degree) in [
        (
            vec!["build", "--builder", "gmm", "--m", "2", "--dim", "4"],
            12,
        ),
        (
            vec!["build", "--builder", "gm1", "--m", "1", "--dim", "4"],
            10,
        ),
        (vec!["build", "--builder", "g31"], 60),
    ] {
        let out = eigencert(&args);
        let value: serde_json::Value = serde_json::from_str(&stdout_of(&out)).expect("valid json");
        assert_eq!(
            value["hyperplanes"].as_array().unwrap().len(),
            degree,
            "{args:?}"
        );
    }
}

#[test]
fn unknown_verdicts_exit_with_code_two() {
    let out = eigencert(&[
        "analyze",
        "--builder",
        "gm1",
        "--m",
        "2",
        "--dim",
        "3",
        "--orders",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let report: serde_json::Value =
        serde_json::from_str(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    assert_eq!(report["eigenvalues"][0]["verdict"], "Unknown");
}

#[test]
fn errors_exit_with_code_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    std::fs::write(&path, "{definitely not json").unwrap();
    let out = eigencert(&[
        "analyze",
        "--builder",
        "file",
        "--input",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("arrangement file"));

    let missing = eigencert(&["analyze", "--builder", "gmm", "--dim", "4"]);
    assert_eq!(missing.status.code(), Some(1));

    let zero_threshold = eigencert(&[
        "analyze",
        "--builder",
        "gmm",
        "--m",
        "2",
        "--dim",
        "4",
        "--threshold-D",
        "0",
    ]);
    assert_eq!(zero_threshold.status.code(), Some(1));
}

#[test]
fn ade_subcommand_reports_agreement() {
    let out = eigencert(&["ade", "--type", "a", "--rank", "4"]);
    let value: serde_json::Value = serde_json::from_str(&stdout_of(&out)).expect("valid json");
    assert_eq!(value["det_S"], 5);
    assert_eq!(value["det_recursive"], 5);
    assert_eq!(value["det_monodromy"], 5);
    assert_eq!(value["agree"], true);

    let text = eigencert(&["ade", "--type", "e", "--rank", "8", "--format", "text"]);
    assert_eq!(
        stdout_of(&text).trim(),
        "E8: det_S=1 det_recursive=1 det_monodromy=1 agree=true"
    );

    let invalid = eigencert(&["ade", "--type", "d", "--rank", "3"]);
    assert_eq!(invalid.status.code(), Some(1));
}

#[test]
fn ts_subcommand_compares_both_derivations() {
    let out = eigencert(&["ts", "2", "2", "2", "2"]);
    let value: serde_json::Value = serde_json::from_str(&stdout_of(&out)).expect("valid json");
    assert_eq!(value["closed_form"], 1);
    assert_eq!(value["brute_force"], 1);
    assert_eq!(value["agree"], true);

    let partial = eigencert(&[
        "ts",
        "2",
        "3",
        "2",
        "3",
        "--component",
        "1,1",
        "--generators",
        "x",
    ]);
    let value: serde_json::Value = serde_json::from_str(&stdout_of(&partial)).expect("valid json");
    assert_eq!(value["closed_form"], 0);
    assert_eq!(value["brute_force"], 0);

    let bad = eigencert(&["ts", "2", "3", "2", "3", "--component", "3,1"]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn analyze_with_oracle_table_and_witness_files() {
    let dir = tempfile::tempdir().unwrap();

    // A test-only table entry that decides the G(2,1,3) origin local type
    // left undecided by the built-in rules: degree 9 with profile [9] at
    // order 3.
    let table = dir.path().join("table.json");
    std::fs::write(
        &table,
        r#"[{"degree":9,"profile":[9],"order":3,"status":"zero","citation":"test fixture"}]"#,
    )
    .unwrap();

    let without = eigencert(&[
        "analyze",
        "--builder",
        "gm1",
        "--m",
        "2",
        "--dim",
        "3",
        "--orders",
        "3",
    ]);
    assert_eq!(without.status.code(), Some(2));

    let with = eigencert(&[
        "analyze",
        "--builder",
        "gm1",
        "--m",
        "2",
        "--dim",
        "3",
        "--orders",
        "3",
        "--oracle-table",
        table.to_str().unwrap(),
        "--assume",
    ]);
    assert_eq!(with.status.code(), Some(0), "table + assume certifies");
    let report: serde_json::Value = serde_json::from_str(&stdout_of(&with)).unwrap();
    let entry = &report["eigenvalues"][0];
    assert_eq!(entry["verdict"], "CertifiedZero");
    assert_eq!(entry["certificate"]["kind"], "local_vanishing");
    assert_eq!(entry["certificate"]["conditional"], true);
    assert!(entry["assumptions"]
        .as_array()
        .unwrap()
        .iter()
        .any(|a| a.as_str().unwrap().contains("test fixture")));

    // Without --assume the table must not fire.
    let no_assume = eigencert(&[
        "analyze",
        "--builder",
        "gm1",
        "--m",
        "2",
        "--dim",
        "3",
        "--orders",
        "3",
        "--oracle-table",
        table.to_str().unwrap(),
    ]);
    assert_eq!(no_assume.status.code(), Some(2));

    // Replacing the witness rules by an empty list keeps the bound sound but
    // can only increase rho; for G(2,2,4) at order 3 it goes from 1 to the
    // number of core edges.
    let witnesses = dir.path().join("rules.json");
    std::fs::write(&witnesses, "[]").unwrap();
    let bound = eigencert(&[
        "analyze",
        "--builder",
        "gmm",
        "--m",
        "2",
        "--dim",
        "4",
        "--orders",
        "3",
        "--witnesses",
        witnesses.to_str().unwrap(),
    ]);
    let report: serde_json::Value = serde_json::from_str(&stdout_of(&bound)).unwrap();
    let rho = report["eigenvalues"][0]["rho"].as_u64().unwrap();
    assert!(rho > 1, "without strong-edge rules the bound is coarser");
}

#[test]
fn order_exclusion_rows_appear_for_non_divisors() {
    let out = eigencert(&[
        "analyze",
        "--builder",
        "gmm",
        "--m",
        "2",
        "--dim",
        "4",
        "--orders",
        "7,4",
    ]);
    let report: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    let rows = report["eigenvalues"].as_array().unwrap();
    let excluded: Vec<_> = rows
        .iter()
        .filter(|e| e["certificate"]["kind"] == "order_excluded")
        .collect();
    assert_eq!(excluded.len(), 1);
    assert_eq!(excluded[0]["order"], 7);
    assert_eq!(excluded[0]["verdict"], "CertifiedZero");
}

#[test]
fn text_format_is_deterministic_and_readable() {
    let args = [
        "analyze",
        "--builder",
        "gmm",
        "--m",
        "2",
        "--dim",
        "4",
        "--format",
        "text",
    ];
    let first = eigencert(&args);
    let second = eigencert(&args);
    assert_eq!(first.stdout, second.stdout);
    let text = stdout_of(&first);
    assert!(text.contains("certified zero"));
    assert!(text.contains("rho <= 1"));
    assert!(text.contains("assumption:"));
}

#[test]
fn out_flag_writes_the_same_bytes_as_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let to_stdout = eigencert(&[
        "analyze",
        "--builder",
        "gmm",
        "--m",
        "3",
        "--dim",
        "4",
        "--orders",
        "2",
    ]);
    let to_file = eigencert(&[
        "analyze",
        "--builder",
        "gmm",
        "--m",
        "3",
        "--dim",
        "4",
        "--orders",
        "2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(to_file.status.success());
    assert_eq!(
        std::fs::read(&path).unwrap(),
        to_stdout.stdout,
        "file and stdout bytes must agree"
    );
    assert!(Path::new(&path).exists());
}

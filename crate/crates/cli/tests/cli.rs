use std::path::Path;
use std::process::{Command, Output};

fn rmclass(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rmclass"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn value<'a>(text: &'a str, key: &str) -> Option<&'a str> {
    text.lines().find_map(|l| l.strip_prefix(key)?.strip_prefix('='))
}

fn stable(text: &str) -> String {
    text.lines()
        .filter(|l| !l.starts_with("elapsed_ms="))
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn count_examples() {
    for (args, want) in [
        (["--n", "7", "--s", "7", "--k", "1"], "63379147320777408548"),
        (["--n", "3", "--s", "1", "--k", "0"], "2"),
        (["--n", "8", "--s", "8", "--k", "7"], "2"),
    ] {
        let out = rmclass(&[&["count"], &args[..]].concat());
        assert!(out.status.success());
        let text = stdout(&out);
        assert_eq!(value(&text, "count"), Some(want), "{text}");
        assert_eq!(value(&text, "provider"), Some("canonical"));
        assert!(value(&text, "cells").is_some());
        assert!(value(&text, "elapsed_ms").is_some());
    }
}

#[test]
fn negative_k_means_no_quotient() {
    let out = rmclass(&["count", "--n", "2", "--s", "2", "--k", "-1"]);
    assert!(out.status.success());
    assert_eq!(value(&stdout(&out), "k"), Some("-1"));
    let exhaustive = rmclass(&["count", "--n", "2", "--s", "2", "--k=-1", "--provider", "exhaustive"]);
    assert_eq!(value(&stdout(&out), "count"), value(&stdout(&exhaustive), "count"));
}

#[test]
fn output_is_stable_across_thread_counts() {
    let args = ["count", "--n", "6", "--s", "4", "--k", "1", "--seed", "11"];
    let one = rmclass(&[&["--threads", "1"], &args[..]].concat());
    let default = rmclass(&args);
    assert_eq!(stable(&stdout(&one)), stable(&stdout(&default)));
}

#[test]
fn verify_small_tables() {
    let out = rmclass(&["verify", "--max-n", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("PASS table=I n=6 k=1 s=6 expected=150357 got=150357"));
    assert_eq!(value(&text, "failed"), Some("0"));

    let out = rmclass(&["verify", "--max-n", "7", "--table", "III"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 25);
}

#[test]
fn verify_reports_corrupted_oracle() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("oracle.txt");
    std::fs::write(&path, "# corrupted\nI 4 1 4 9\nI 3 1 3 3\n").unwrap();
    let out = rmclass(&["verify", "--oracle", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("FAIL table=I n=4 k=1 s=4 expected=9 got=8"), "{text}");
    assert!(text.contains("PASS table=I n=3 k=1 s=3"));
    assert_eq!(value(&text, "failed"), Some("1"));
}

#[test]
fn tau_prints_matrix_rows() {
    let out = rmclass(&["tau", "--element", "3 110 010 001 100", "--s", "3", "--k", "-1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().filter_map(|l| l.strip_prefix("row=")).collect();
    assert_eq!(
        rows,
        ["10000000", "01000000", "00100000", "00110000", "00001000", "00001100", "00100010", "00001001"]
    );
    assert_eq!(value(&text, "fixed"), Some("2^6"));
}

#[test]
fn tau_rejects_singular_element() {
    let out = rmclass(&["tau", "--element", "3 110 110 001 100", "--s", "3", "--k", "-1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("singular"));
}

fn write_classes(dir: &Path, n: &str) -> std::path::PathBuf {
    let path = dir.join(format!("cells{n}.txt"));
    let out = rmclass(&["classes", "--n", n, "--file", path.to_str().unwrap()]);
    assert!(out.status.success());
    path
}

#[test]
fn classes_roundtrip_through_import() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_classes(dir.path(), "3");
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(written.starts_with("rmclass-cells v1 n=3 count="));
    let again = rmclass(&["classes", "--n", "3"]);
    assert_eq!(stdout(&again), written);

    for (s, k) in [("3", "-1"), ("3", "1"), ("2", "0")] {
        let imported = rmclass(&[
            "count",
            "--n",
            "3",
            "--s",
            s,
            "--k",
            k,
            "--provider",
            "import",
            "--file",
            path.to_str().unwrap(),
        ]);
        let canonical = rmclass(&["count", "--n", "3", "--s", s, "--k", k]);
        assert!(imported.status.success());
        assert_eq!(value(&stdout(&imported), "count"), value(&stdout(&canonical), "count"));
        assert_eq!(value(&stdout(&imported), "provider"), Some("import"));
    }
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(
        rmclass(&["count", "--n", "3", "--s", "1", "--k", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        rmclass(&["count", "--n", "11", "--s", "1", "--k", "0"]).status.code(),
        Some(2)
    );
    assert_eq!(
        rmclass(&["count", "--n", "5", "--s", "1", "--k", "0", "--provider", "exhaustive"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        rmclass(&["count", "--n", "3", "--s", "1", "--k", "0", "--provider", "import"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(rmclass(&["count", "--n", "3"]).status.code(), Some(2));
}

#[test]
fn bad_cell_files_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.txt");
    std::fs::write(&empty, "").unwrap();
    let out = rmclass(&[
        "count",
        "--n",
        "3",
        "--s",
        "3",
        "--k",
        "1",
        "--provider",
        "import",
        "--file",
        empty.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));

    let path = write_classes(dir.path(), "2");
    let text = std::fs::read_to_string(&path).unwrap();
    let inflated: Vec<String> = text
        .lines()
        .map(|l| {
            if l.starts_with("cell 0 size ") {
                format!("{l}0")
            } else {
                l.to_string()
            }
        })
        .collect();
    std::fs::write(&path, inflated.join("\n") + "\n").unwrap();
    let out = rmclass(&[
        "count",
        "--n",
        "2",
        "--s",
        "2",
        "--k",
        "0",
        "--provider",
        "import",
        "--file",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("sum"));
}

#[test]
fn symmetry_has_no_violations() {
    let out = rmclass(&["symmetry", "--n", "5"]);
    assert!(out.status.success());
    assert_eq!(value(&stdout(&out), "violations"), Some("0"));
}

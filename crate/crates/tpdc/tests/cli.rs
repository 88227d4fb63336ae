//! End-to-end tests of the `tpdc` binary: exit codes, determinism, and
//! artifact production.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn tpdc() -> Command {
    Command::new(env!("CARGO_BIN_EXE_tpdc"))
}

fn run(args: &[&str]) -> Output {
    tpdc().args(args).output().expect("binary runs")
}

fn shipped_config() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs/reference.json")
}

#[test]
fn missing_config_is_a_config_error() {
    let out = run(&["model", "--config", "missing.cfg"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("missing.cfg"), "stderr: {err}");
}

#[test]
fn unknown_subcommand_prints_usage_to_stderr() {
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.to_lowercase().contains("usage"), "stderr: {err}");
    assert!(out.stdout.is_empty());
}

#[test]
fn unknown_flag_is_rejected() {
    let out = run(&["model", "--frobnicate"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn help_exits_zero() {
    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("tpdc"));
}

#[test]
fn model_prints_the_reference_point() {
    let out = run(&["model"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("beta"), "stdout: {text}");
    assert!(text.contains("triplets per second"), "stdout: {text}");
}

#[test]
fn model_accepts_the_shipped_config() {
    let out = run(&["model", "--config", shipped_config().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let with_defaults = run(&["model"]);
    assert_eq!(out.stdout, with_defaults.stdout);
}

#[test]
fn simulate_is_byte_identical_across_runs() {
    let args = ["simulate", "--seed", "42", "--pulses", "200000"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());

    // A different seed changes the outcome.
    let c = run(&["simulate", "--seed", "43", "--pulses", "200000"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn report_produces_csvs_and_svgs_deterministically() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("report");
    let args = ["report", "--tf", "0.11", "--out", out_dir.to_str().unwrap()];
    let first = run(&args);
    assert_eq!(
        first.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&first.stderr)
    );

    let artifacts = [
        "set_a.csv",
        "set_b.csv",
        "absolute_flux.csv",
        "set_a_normalized.svg",
        "set_b_normalized.svg",
        "absolute_flux.svg",
    ];
    let mut bytes_first = Vec::new();
    for name in artifacts {
        let path = out_dir.join(name);
        assert!(path.exists(), "missing artifact {name}");
        bytes_first.push(std::fs::read(&path).unwrap());
    }

    // Second run reproduces every artifact byte for byte.
    let second = run(&args);
    assert_eq!(second.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    for (name, expected) in artifacts.iter().zip(&bytes_first) {
        let observed = std::fs::read(out_dir.join(name)).unwrap();
        assert_eq!(&observed, expected, "artifact {name} changed across runs");
    }

    // No leftover temp files from the atomic writes.
    for entry in std::fs::read_dir(&out_dir).unwrap() {
        let name = entry.unwrap().file_name();
        assert!(
            !name.to_string_lossy().ends_with(".tmp"),
            "leftover temp file {name:?}"
        );
    }
}

#[test]
fn report_set_a_csv_has_nine_lines_for_builtin_data() {
    // 5 set A rows + header = 6; 3 set B rows + header = 4; the absolute
    // table covers all 8 points + header = 9.
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("r");
    let out = run(&["report", "--out", out_dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let lines = |name: &str| {
        std::fs::read_to_string(out_dir.join(name))
            .unwrap()
            .lines()
            .count()
    };
    assert_eq!(lines("set_a.csv"), 6);
    assert_eq!(lines("set_b.csv"), 4);
    assert_eq!(lines("absolute_flux.csv"), 9);
}

#[test]
fn check_passes_on_defaults() {
    let out = run(&["check"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "stdout: {}",
        String::from_utf8_lossy(&out.stdout)
    );
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("[PASS]"));
    assert!(!text.contains("[FAIL]"));
}

#[test]
fn fit_tf_reports_a_value_in_range() {
    let out = run(&["fit-tf"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    let value: f64 = text
        .lines()
        .find(|l| l.starts_with("fitted T_F"))
        .and_then(|l| l.split('=').nth(1))
        .map(|v| v.trim().parse().unwrap())
        .expect("fitted value line");
    assert!((0.02..=0.20).contains(&value), "fitted {value}");
}

#[test]
fn gamma_override_changes_the_model() {
    let a = run(&["model", "--gamma", "0.537"]);
    let b = run(&["model", "--gamma", "0.576"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(b.status.code(), Some(0));
    assert_ne!(a.stdout, b.stdout);
}

#[test]
fn external_dataset_roundtrip() {
    // A report CSV re-fed as a dataset reproduces the measured columns.
    let dir = tempfile::tempdir().unwrap();
    let out_a = dir.path().join("first");
    let first = run(&["report", "--out", out_a.to_str().unwrap()]);
    assert_eq!(first.status.code(), Some(0));

    let merged = dir.path().join("merged.csv");
    // Concatenate the two per-set CSVs into one dataset file.
    let a = std::fs::read_to_string(out_a.join("set_a.csv")).unwrap();
    let b = std::fs::read_to_string(out_a.join("set_b.csv")).unwrap();
    let mut combined = a;
    for line in b.lines().skip(1) {
        combined.push_str(line);
        combined.push('\n');
    }
    std::fs::write(&merged, combined).unwrap();

    let out_b = dir.path().join("second");
    let second = run(&[
        "report",
        "--dataset",
        merged.to_str().unwrap(),
        "--out",
        out_b.to_str().unwrap(),
    ]);
    assert_eq!(
        second.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&second.stderr)
    );
    // Identical comparison tables; only the trailing artifacts-path line
    // differs between the two runs.
    let table = |out: &Output| -> String {
        String::from_utf8_lossy(&out.stdout)
            .lines()
            .filter(|l| !l.starts_with("artifacts written to"))
            .collect::<Vec<_>>()
            .join("\n")
    };
    assert_eq!(table(&first), table(&second));
}

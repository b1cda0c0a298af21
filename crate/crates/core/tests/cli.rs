//! End-to-end tests of the command-line interface: exit codes, artifact
//! contracts, and byte-level reproducibility.

use std::path::{Path, PathBuf};
use std::process::Command;

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fluxlaw"))
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../configs")
        .join(name)
}

fn temp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("fluxlaw-cli-{tag}-{}", std::process::id()));
    std::fs::remove_dir_all(&dir).ok();
    dir
}

#[test]
fn verify_exits_zero_on_shipped_fixture() {
    let out = temp_dir("verify-shock");
    let status = binary()
        .args(["verify", "--config"])
        .arg(fixture("burgers_shock_1d.json"))
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    assert!(out.join("report.json").is_file());
    assert!(out.join("summary.csv").is_file());

    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("report.json")).unwrap()).unwrap();
    assert_eq!(report["all_passed"], serde_json::Value::Bool(true));
    assert_eq!(report["tool"], "fluxlaw");
    assert!(report["config_digest"].as_str().unwrap().len() == 64);
    std::fs::remove_dir_all(&out).ok();
}

#[test]
fn trace_emits_exactly_k_plus_one_rows() {
    let out = temp_dir("trace-rows");
    let status = binary()
        .args(["trace", "--config"])
        .arg(fixture("trace_burgers_foliation.json"))
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let text = std::fs::read_to_string(out.join("trace.csv")).unwrap();
    let data_rows = text
        .lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with('y'))
        .count();
    // The fixture sets k = 16.
    assert_eq!(data_rows, 17);
    // Header carries version, digest, seed.
    assert!(text.starts_with("# fluxlaw "));
    assert!(text.contains("# seed 42"));
    std::fs::remove_dir_all(&out).ok();
}

#[test]
fn trace_faces_mode_emits_one_row_per_position() {
    let dir = temp_dir("trace-faces");
    std::fs::create_dir_all(&dir).unwrap();
    let config = dir.join("faces.json");
    std::fs::write(
        &config,
        r#"{
            "model": {"name": "burgers", "dim": 1},
            "oracle": {"u_l": [1.0], "u_r": [0.0], "normal": [1.0]},
            "domain": {"kind": "box", "lo": [-1.0], "hi": [1.0]},
            "trace": {"t1": 0.0, "t2": 1.0, "faces": {"axis": 0, "positions": [0.0, 0.25, 0.5]}}
        }"#,
    )
    .unwrap();
    let out = dir.join("out");
    let status = binary()
        .args(["trace", "--config"])
        .arg(&config)
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let text = std::fs::read_to_string(out.join("trace.csv")).unwrap();
    let rows: Vec<&str> = text
        .lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with('y'))
        .collect();
    assert_eq!(rows.len(), 3);
    // Closed form (1 - 2x)⁺/2 at the three positions.
    let value = |row: &str| row.split(',').nth(3).unwrap().parse::<f64>().unwrap();
    assert!((value(rows[0]) - 0.5).abs() < 1e-9);
    assert!((value(rows[1]) - 0.25).abs() < 1e-9);
    assert!(value(rows[2]).abs() < 1e-9);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn verify_runs_the_disk_fixture() {
    let out = temp_dir("verify-disk");
    let status = binary()
        .args(["verify", "--config"])
        .arg(fixture("burgers_oblique_disk_2d.json"))
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    std::fs::remove_dir_all(&out).ok();
}

#[test]
fn identical_config_and_seed_give_byte_identical_outputs() {
    let out_a = temp_dir("repro-a");
    let out_b = temp_dir("repro-b");
    for out in [&out_a, &out_b] {
        let status = binary()
            .args(["trace", "--config"])
            .arg(fixture("trace_burgers_foliation.json"))
            .arg("--out")
            .arg(out)
            .status()
            .unwrap();
        assert!(status.success());
    }
    let a = std::fs::read(out_a.join("trace.csv")).unwrap();
    let b = std::fs::read(out_b.join("trace.csv")).unwrap();
    assert_eq!(a, b);

    // Summary CSV of a verify run is byte-identical too.
    for out in [&out_a, &out_b] {
        let status = binary()
            .args(["verify", "--config"])
            .arg(fixture("constant_state_1d.json"))
            .arg("--out")
            .arg(out)
            .status()
            .unwrap();
        assert!(status.success());
    }
    let a = std::fs::read(out_a.join("summary.csv")).unwrap();
    let b = std::fs::read(out_b.join("summary.csv")).unwrap();
    assert_eq!(a, b);
    std::fs::remove_dir_all(&out_a).ok();
    std::fs::remove_dir_all(&out_b).ok();
}

#[test]
fn solve_writes_fields_and_ledger() {
    let out = temp_dir("solve");
    let status = binary()
        .args(["solve", "--config"])
        .arg(fixture("solver_burgers_2d_64.json"))
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    // Initial time, checkpoints 0.3 and 0.6, and t_end = 0.9.
    for k in 0..4 {
        assert!(out.join(format!("field_{k:04}.csv")).is_file());
    }
    let ledger = std::fs::read_to_string(out.join("ledger.csv")).unwrap();
    let header = ledger.lines().find(|l| !l.starts_with('#')).unwrap();
    assert_eq!(header, "axis,face_index,position,t1,t2,F_1");
    std::fs::remove_dir_all(&out).ok();
}

#[test]
fn invalid_config_exits_with_code_two() {
    let dir = temp_dir("bad-config");
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"model": {"name": "euler"}}"#).unwrap();
    let output = binary()
        .args(["verify", "--config"])
        .arg(&bad)
        .arg("--out")
        .arg(dir.join("out"))
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("burgers"), "suggestions missing: {stderr}");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn unwritable_output_path_fails_nonzero() {
    let dir = temp_dir("out-is-file");
    std::fs::create_dir_all(&dir).unwrap();
    let blocker = dir.join("blocked");
    std::fs::write(&blocker, b"").unwrap();
    let status = binary()
        .args(["trace", "--config"])
        .arg(fixture("trace_burgers_foliation.json"))
        .arg("--out")
        .arg(&blocker)
        .status()
        .unwrap();
    assert!(!status.success());
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn seed_flag_overrides_config() {
    let out = temp_dir("seed-override");
    let status = binary()
        .args(["verify", "--config"])
        .arg(fixture("constant_state_1d.json"))
        .arg("--out")
        .arg(&out)
        .args(["--seed", "777"])
        .status()
        .unwrap();
    assert!(status.success());
    let text = std::fs::read_to_string(out.join("summary.csv")).unwrap();
    assert!(text.contains("# seed 777"));
    std::fs::remove_dir_all(&out).ok();
}

//! End-to-end behavior of the `uvaa` binary: exit codes, output shapes and
//! byte-level determinism.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn uvaa() -> Command {
    Command::new(env!("CARGO_BIN_EXE_uvaa"))
}

fn run_ok(args: &[&str]) -> Output {
    let out = uvaa().args(args).output().expect("binary runs");
    assert!(
        out.status.success(),
        "uvaa {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

fn gen_scenario(dir: &Path, name: &str, n_uav: usize) -> PathBuf {
    let path = dir.join(name);
    run_ok(&[
        "gen-scenario",
        "--seed",
        "7",
        "--n-uav",
        &n_uav.to_string(),
        "--n-known",
        "2",
        "--n-unknown",
        "1",
        "--out",
        path.to_str().unwrap(),
    ]);
    path
}

fn read(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap_or_else(|e| panic!("read {}: {e}", path.display()))
}

#[test]
fn missing_scenario_exits_2_and_names_the_path() {
    let out = uvaa()
        .args(["optimize", "--scenario", "/nonexistent/s.json", "--out", "/tmp/x"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("/nonexistent/s.json"), "stderr: {stderr}");
}

#[test]
fn unknown_flag_exits_2() {
    let out = uvaa().args(["optimize", "--bogus"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn invalid_scenario_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{ not json").unwrap();
    let out = uvaa()
        .args(["evaluate", "--scenario", path.to_str().unwrap(), "--solution", "x.json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn optimize_writes_all_artifacts_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let scenario = gen_scenario(dir.path(), "s.json", 4);
    let run = |out: &str, threads: &str| {
        run_ok(&[
            "optimize",
            "--scenario",
            scenario.to_str().unwrap(),
            "--algo",
            "moalo-rsi",
            "--seed",
            "5",
            "--pop",
            "8",
            "--iters",
            "6",
            "--threads",
            threads,
            "--out",
            dir.path().join(out).to_str().unwrap(),
        ])
    };
    let first = run("a", "1");
    let second = run("b", "2");
    assert_eq!(first.stdout, second.stdout, "summary lines must match");
    let stdout = String::from_utf8_lossy(&first.stdout);
    assert!(stdout.starts_with("best f1_bps="), "stdout: {stdout}");

    for name in ["archive.json", "best.json", "convergence.csv", "thresholds.csv"] {
        let a = read(&dir.path().join("a").join(name));
        let b = read(&dir.path().join("b").join(name));
        assert_eq!(a, b, "{name} differs across runs/threads");
    }
    // Manifests carry a timestamp; their artifact checksums must still
    // agree.
    let ma: serde_json::Value = serde_json::from_str(&read(&dir.path().join("a/manifest.json"))).unwrap();
    let mb: serde_json::Value = serde_json::from_str(&read(&dir.path().join("b/manifest.json"))).unwrap();
    assert_eq!(ma["artifacts"], mb["artifacts"]);
    assert_eq!(ma["scenario_sha256"], mb["scenario_sha256"]);

    // Convergence log has one row per iteration plus the header.
    let conv = read(&dir.path().join("a/convergence.csv"));
    assert_eq!(conv.lines().count(), 1 + 6);
    assert_eq!(
        conv.lines().next().unwrap(),
        "iteration,best_f1_bps,best_f2_db,best_f3_j,archive_size"
    );
}

#[test]
fn evaluate_at_rest_reports_zero_energy_and_identical_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let scenario = gen_scenario(dir.path(), "s.json", 4);

    // Build an "unmoved" solution file from the scenario's own original
    // positions.
    let sfile: serde_json::Value = serde_json::from_str(&read(&scenario)).unwrap();
    let positions = [
        sfile["swarms"][0]["original_positions"].clone(),
        sfile["swarms"][1]["original_positions"].clone(),
    ];
    let solution = serde_json::json!({
        "positions": positions,
        "weights": [[1.0, 1.0, 1.0, 1.0], [1.0, 1.0, 1.0, 1.0]],
        "receivers": [0, 2],
    });
    let sol_path = dir.path().join("sol.json");
    std::fs::write(&sol_path, serde_json::to_string_pretty(&solution).unwrap()).unwrap();

    let args = [
        "evaluate",
        "--scenario",
        scenario.to_str().unwrap(),
        "--solution",
        sol_path.to_str().unwrap(),
    ];
    let first = run_ok(&args);
    let second = run_ok(&args);
    assert_eq!(first.stdout, second.stdout);

    let report: serde_json::Value = serde_json::from_slice(&first.stdout).unwrap();
    assert_eq!(report["objectives"]["g3_joules"], 0.0);
    assert_eq!(report["secrecy_known"]["set"], "known");
    assert!(report["objectives"]["f1_bps"].as_f64().unwrap().is_finite());
}

#[test]
fn evaluate_shape_mismatch_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let scenario = gen_scenario(dir.path(), "s.json", 4);
    let solution = serde_json::json!({
        "positions": [[[0.0, 0.0, 80.0]], [[5000.0, 0.0, 80.0]]],
        "weights": [[1.0], [1.0]],
        "receivers": [0, 0],
    });
    let sol_path = dir.path().join("sol.json");
    std::fs::write(&sol_path, solution.to_string()).unwrap();
    let out = uvaa()
        .args([
            "evaluate",
            "--scenario",
            scenario.to_str().unwrap(),
            "--solution",
            sol_path.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn pattern_row_count_matches_grid() {
    let dir = tempfile::tempdir().unwrap();
    let scenario = gen_scenario(dir.path(), "s.json", 4);
    let run_dir = dir.path().join("run");
    run_ok(&[
        "optimize",
        "--scenario",
        scenario.to_str().unwrap(),
        "--pop",
        "6",
        "--iters",
        "3",
        "--seed",
        "2",
        "--out",
        run_dir.to_str().unwrap(),
    ]);
    let sol_path = run_dir.join("best_solution.json");
    let pat_dir = dir.path().join("pat");
    run_ok(&[
        "pattern",
        "--scenario",
        scenario.to_str().unwrap(),
        "--solution",
        sol_path.to_str().unwrap(),
        "--swarm",
        "2",
        "--out",
        pat_dir.to_str().unwrap(),
    ]);
    let csv = read(&pat_dir.join("pattern.csv"));
    // 5-degree default grid: 36 x 72 cells plus the header line.
    assert_eq!(csv.lines().count(), 1 + 36 * 72);
    assert_eq!(csv.lines().next().unwrap(), "theta_rad,phi_rad,af,af_norm_db");
}

#[test]
fn robustness_row_count_matches_trials() {
    let dir = tempfile::tempdir().unwrap();
    let scenario = gen_scenario(dir.path(), "s.json", 4);
    let base_dir = dir.path().join("base");
    run_ok(&[
        "baseline",
        "--scenario",
        scenario.to_str().unwrap(),
        "--seed",
        "3",
        "--out",
        base_dir.to_str().unwrap(),
    ]);
    let rob_dir = dir.path().join("rob");
    run_ok(&[
        "robustness",
        "--scenario",
        scenario.to_str().unwrap(),
        "--solution",
        base_dir.join("solution.json").to_str().unwrap(),
        "--kind",
        "jitter",
        "--drift",
        "0.5",
        "--trials",
        "17",
        "--seed",
        "9",
        "--out",
        rob_dir.to_str().unwrap(),
    ]);
    let csv = read(&rob_dir.join("robustness.csv"));
    assert_eq!(csv.lines().count(), 1 + 17);
    let summary: serde_json::Value =
        serde_json::from_str(&read(&rob_dir.join("robustness_summary.json"))).unwrap();
    assert_eq!(summary["trials"], 17);
    assert!(summary["f1_bps"]["mean"].as_f64().unwrap().is_finite());
}

#[test]
fn baseline_is_feasible_when_spacing_allows() {
    let dir = tempfile::tempdir().unwrap();
    let scenario_path = gen_scenario(dir.path(), "s.json", 4);
    // Shrink d_min below lambda/2 = 0.0625 m so the line array is feasible.
    let mut sfile: serde_json::Value = serde_json::from_str(&read(&scenario_path)).unwrap();
    sfile["d_min"] = serde_json::json!(0.05);
    std::fs::write(&scenario_path, sfile.to_string()).unwrap();

    let out_dir = dir.path().join("base");
    run_ok(&[
        "baseline",
        "--scenario",
        scenario_path.to_str().unwrap(),
        "--seed",
        "1",
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    let eval: serde_json::Value =
        serde_json::from_str(&read(&out_dir.join("evaluation.json"))).unwrap();
    assert_eq!(eval["objectives"]["feasible"], true);
    assert_eq!(eval["objectives"]["violation_m"], 0.0);
}

#[test]
fn gen_scenario_roundtrips_through_load() {
    let dir = tempfile::tempdir().unwrap();
    let path = gen_scenario(dir.path(), "s.json", 5);
    let text = read(&path);
    let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(parsed["swarms"].as_array().unwrap().len(), 2);
    assert_eq!(parsed["swarms"][0]["original_positions"].as_array().unwrap().len(), 5);
    // Loading back through evaluate must succeed (validator accepts it).
    let positions = [
        parsed["swarms"][0]["original_positions"].clone(),
        parsed["swarms"][1]["original_positions"].clone(),
    ];
    let solution = serde_json::json!({
        "positions": positions,
        "weights": [vec![1.0; 5], vec![1.0; 5]],
        "receivers": [4, 4],
    });
    let sol_path = dir.path().join("sol.json");
    std::fs::write(&sol_path, solution.to_string()).unwrap();
    run_ok(&[
        "evaluate",
        "--scenario",
        path.to_str().unwrap(),
        "--solution",
        sol_path.to_str().unwrap(),
    ]);
}

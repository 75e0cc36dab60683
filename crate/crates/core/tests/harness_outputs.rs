use std::fs;
use std::path::Path;

use mwdg::harness::{
    compute_stats, counts_from_rows, read_history_file, read_manifest_counts, read_snapshot, run_experiment,
    ExperimentConfig, HistoryRow, Problem, RowMode, Solution,
};
use mwdg::indicators::{IndicatorConfig, IndicatorVars};
use mwdg::limiter::LimiterMode;

fn short_sod(dir: &Path) -> ExperimentConfig {
    let mut cfg = ExperimentConfig::new(Problem::Sod, 1).with_level(5).with_out_dir(dir);
    cfg.t_final = 0.5;
    cfg.outputs = 2;
    cfg
}

/// History times are written with 11 significant digits.
fn same_rows(a: &[HistoryRow], b: &[HistoryRow]) -> bool {
    a.len() == b.len()
        && a.iter().zip(b).all(|(x, y)| {
            (x.step, x.element_i, x.element_j, x.mode) == (y.step, y.element_i, y.element_j, y.mode)
                && (x.time - y.time).abs() <= 1e-10 * y.time.abs().max(1.0)
        })
}

fn stats_row(dir: &Path) -> Vec<String> {
    let text = fs::read_to_string(dir.join("stats.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("indicator,variables,C,avg_pct,max_pct"));
    lines.next().unwrap().split(',').map(str::to_string).collect()
}

#[test]
fn a_run_writes_history_stats_manifest_and_snapshots() {
    let dir = tempfile::tempdir().unwrap();
    let r = run_experiment(&short_sod(dir.path())).unwrap();
    assert!((r.time - 0.5).abs() < 1e-14);
    for name in ["history.csv", "stats.csv", "manifest.json"] {
        assert!(dir.path().join(name).exists(), "{name}");
    }
    assert!(!dir.path().join("limited_history.csv").exists());
    assert_eq!(r.snapshots.len(), 3);

    let rows = read_history_file(&dir.path().join("history.csv")).unwrap();
    assert!(same_rows(&rows, &r.history));
    let (steps, n, manifest) = read_manifest_counts(&dir.path().join("manifest.json")).unwrap();
    assert_eq!((steps, n), (r.steps, 32));
    assert_eq!(manifest["status"], "completed");
    let stats = compute_stats(&counts_from_rows(&rows, steps).unwrap(), n).unwrap();
    assert_eq!(stats, r.stats);
    let row = stats_row(dir.path());
    assert_eq!(&row[..3], ["mw", "density", "0.1"]);
    assert_eq!(row[3], format!("{:.4}", stats.avg_pct));

    let last = dir.path().join(r.snapshots.last().unwrap());
    let snap = read_snapshot(fs::File::open(last).unwrap()).unwrap();
    // k+1 Gauss nodes per element for rho, momentum, energy, u and p
    assert_eq!(snap.len(), 32 * 2 * 5);
    assert!(snap.iter().filter(|s| s.component == "rho").all(|s| s.value > 0.0));
}

#[test]
fn identical_configurations_give_identical_files() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    run_experiment(&short_sod(a.path())).unwrap();
    run_experiment(&short_sod(b.path())).unwrap();
    for name in ["history.csv", "stats.csv"] {
        assert_eq!(fs::read(a.path().join(name)).unwrap(), fs::read(b.path().join(name)).unwrap(), "{name}");
    }
}

#[test]
fn limiting_everywhere_records_the_limited_elements() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = short_sod(dir.path());
    cfg.limiter.mode = LimiterMode::Everywhere;
    let r = run_experiment(&cfg).unwrap();
    assert!(dir.path().join("limited_history.csv").exists());
    assert!(!r.limited.is_empty());
    let limited = read_history_file(&dir.path().join("limited_history.csv")).unwrap();
    assert!(same_rows(&limited, &r.limited));
}

#[test]
fn a_failed_run_still_leaves_a_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = short_sod(dir.path());
    cfg.max_steps = 3;
    assert!(run_experiment(&cfg).is_err());
    let text = fs::read_to_string(dir.path().join("manifest.json")).unwrap();
    let manifest: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(manifest["status"], "failed");
    assert!(manifest["error"].as_str().is_some_and(|e| !e.is_empty()));
    assert!(dir.path().join("history.csv").exists());
}

#[test]
fn baseline_indicators_run_through_the_harness() {
    for (indicator, label, c) in [
        (IndicatorConfig::kxrcf(IndicatorVars::DensityEntropy), "kxrcf", "1"),
        (IndicatorConfig::harten(1.5, IndicatorVars::Density), "harten", "1.5"),
    ] {
        let dir = tempfile::tempdir().unwrap();
        let r = run_experiment(&short_sod(dir.path()).with_indicator(indicator)).unwrap();
        assert!(r.stats.max_pct > 0.0, "{label}");
        let row = stats_row(dir.path());
        assert_eq!(row[0], label);
        assert_eq!(row[2], c);
    }
}

#[test]
fn two_d_history_separates_modes_from_the_combined_mask() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = ExperimentConfig::new(Problem::DoubleMach, 1).with_out_dir(dir.path());
    cfg.level = 4;
    cfg.level_y = Some(2);
    cfg.t_final = 0.02;
    cfg.outputs = 1;
    let r = run_experiment(&cfg).unwrap();
    let Solution::TwoD(u) = &r.solution else { panic!("expected a 2D solution") };
    assert_eq!((u.nx(), u.ny()), (16, 4));
    let rows = read_history_file(&dir.path().join("history.csv")).unwrap();
    assert!(rows.iter().all(|row| row.element_j.is_some() && row.mode.is_some()));
    assert!(rows.iter().any(|row| row.mode == Some(RowMode::Comb)));
    let counts = counts_from_rows(&rows, r.steps).unwrap();
    assert_eq!(counts, r.counts);
    let header = fs::read_to_string(dir.path().join("history.csv")).unwrap();
    assert!(header.starts_with("step,time,element_i,element_j,mode"));
}

#[test]
fn invalid_configurations_are_rejected_before_running() {
    let mut cfg = ExperimentConfig::new(Problem::Sod, 1).with_indicator(IndicatorConfig::multiwavelet(1.5));
    assert!(run_experiment(&cfg).is_err());
    cfg = ExperimentConfig::new(Problem::Sod, 1);
    cfg.cfl = -1.0;
    assert!(run_experiment(&cfg).is_err());
}

use std::io::Cursor;

use hamcol::harness::{
    read_trial_log, run_experiment, run_trial, summarize_log, ExperimentConfig, ExperimentSummary, TrialConfig,
    ValidationLevel,
};

fn experiment(n: usize, trials: u64, parallelism: usize) -> ExperimentConfig {
    let mut cfg = ExperimentConfig::new(TrialConfig {
        n,
        seed: 2024,
        validate: ValidationLevel::Full,
        ..TrialConfig::default()
    });
    cfg.trials = trials;
    cfg.parallelism = parallelism;
    cfg
}

fn log_of(cfg: &ExperimentConfig) -> (Vec<u8>, ExperimentSummary) {
    let mut log = Vec::new();
    let (summary, _) = run_experiment(cfg, &mut log).unwrap();
    (log, summary)
}

#[test]
fn logs_are_byte_identical_across_runs_and_threads() {
    let (a, sa) = log_of(&experiment(128, 6, 1));
    let (b, sb) = log_of(&experiment(128, 6, 1));
    let (c, sc) = log_of(&experiment(128, 6, 3));
    assert_eq!(a, b);
    assert_eq!(a, c);
    assert_eq!(sa, sb);
    assert_eq!(sa.to_csv(), sc.to_csv());
}

#[test]
fn summary_is_recomputable_from_the_log() {
    let (log, summary) = log_of(&experiment(96, 5, 2));
    let again = summarize_log(Cursor::new(&log)).unwrap();
    assert_eq!(again.to_csv(), summary.to_csv());
    assert_eq!(again, summary);
    let reports = read_trial_log(Cursor::new(&log)).unwrap();
    assert_eq!(reports.len(), 5);
    for (i, r) in reports.iter().enumerate() {
        assert_eq!(r.trial, i as u64);
    }
}

#[test]
fn single_trial_summary_matches_the_report() {
    let cfg = experiment(64, 1, 1);
    let (log, summary) = log_of(&cfg);
    let report = run_trial(&cfg.trial, 0).unwrap().report;
    let line = serde_json::to_string(&report).unwrap() + "\n";
    assert_eq!(log, line.as_bytes());
    assert_eq!(summary.trials, 1);
    assert_eq!(summary.mean_tau, report.tau as f64);
    assert_eq!(summary.full_success_rate, if report.full_success { 1.0 } else { 0.0 });
}

#[test]
fn reports_are_sound() {
    for sigma in [2, 3] {
        let mut cfg = experiment(200, 4, 1);
        cfg.trial.sigma = sigma;
        let mut log = Vec::new();
        run_experiment(&cfg, &mut log).unwrap();
        for r in read_trial_log(Cursor::new(&log)).unwrap() {
            assert!(r.invariants_hold(), "{:?}", r.invariants);
            assert_eq!(r.colors.len(), sigma as usize);
            for c in &r.colors {
                assert_eq!(c.success, c.checksum.is_some());
            }
            assert_eq!(r.full_success, r.colors.iter().all(|c| c.success));
        }
    }
}

#[test]
fn trial_log_has_the_documented_keys() {
    let (log, _) = log_of(&experiment(64, 1, 1));
    let value: serde_json::Value = serde_json::from_slice(&log).unwrap();
    for key in ["trial", "seed", "n", "sigma", "tau", "colors", "validators", "timings_ms"] {
        assert!(value.get(key).is_some(), "missing {key}");
    }
    for key in ["success", "rounds", "boosters_used"] {
        assert!(value["colors"][0].get(key).is_some(), "missing colors.{key}");
    }
    assert!(value["timings_ms"].is_null());
}

#[test]
fn dumps_are_written_for_trial_zero() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = experiment(64, 2, 1);
    cfg.dump_edges = Some(dir.path().join("edges.txt"));
    cfg.dump_colors = Some(dir.path().join("colors.txt"));
    cfg.dump_cycles = Some(dir.path().join("cycles.txt"));
    let mut log = Vec::new();
    let (_, artifacts) = run_experiment(&cfg, &mut log).unwrap();
    let artifacts = artifacts.expect("artifacts of trial 0");
    let seed = hamcol::harness::trial_seed(cfg.trial.seed, 0);
    hamcol::harness::write_dumps(&cfg, &artifacts, seed).unwrap();
    let edges = std::fs::read_to_string(dir.path().join("edges.txt")).unwrap();
    assert_eq!(edges.lines().next().unwrap(), format!("n=64 seed={seed}"));
    let report = read_trial_log(Cursor::new(&log)).unwrap().remove(0);
    assert_eq!(edges.lines().count() as u64, report.tau + 1);
    let colors = std::fs::read_to_string(dir.path().join("colors.txt")).unwrap();
    assert_eq!(colors.lines().count() as u64, report.tau);
    let cycles = std::fs::read_to_string(dir.path().join("cycles.txt")).unwrap();
    assert_eq!(cycles.lines().count(), artifacts.cycles.len());
}

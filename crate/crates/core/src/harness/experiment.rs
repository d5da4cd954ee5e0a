use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufRead, BufWriter, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coloring::write_color_dump;
use crate::error::{Error, Result};
use crate::posa::write_cycle_dump;
use crate::process::write_edge_dump;
use crate::thresholds;

use super::config::ExperimentConfig;
use super::trial::{run_trial, Artifacts, TrialReport};

/// Aggregates over the trial records of one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSummary {
    pub n: usize,
    pub sigma: u32,
    pub epsilon: f64,
    pub trials: u64,
    pub full_success_rate: f64,
    pub color_success_rates: Vec<f64>,
    pub mean_tau: f64,
    /// Mean `tau` over `n (ln n + (2 sigma - 1) ln ln n) / 2`.
    pub norm_tau: f64,
    pub min_tau: u64,
    pub max_tau: u64,
    pub invariant_pass_rate: f64,
    pub validator_pass_rates: BTreeMap<String, f64>,
    pub validator_skip_rates: BTreeMap<String, f64>,
}

impl ExperimentSummary {
    pub fn from_reports(reports: &[TrialReport]) -> Result<ExperimentSummary> {
        let first = reports
            .first()
            .ok_or_else(|| Error::Config("no trial records to summarize".into()))?;
        let trials = reports.len() as u64;
        let rate = |count: usize| count as f64 / trials as f64;
        let sigma = first.sigma;
        let color_success_rates = (0..sigma as usize)
            .map(|c| rate(reports.iter().filter(|r| r.colors.get(c).is_some_and(|x| x.success)).count()))
            .collect();
        let tau_sum: u64 = reports.iter().map(|r| r.tau).sum();
        let mean_tau = tau_sum as f64 / trials as f64;
        let mut pass = BTreeMap::new();
        let mut skip = BTreeMap::new();
        for r in reports {
            for (name, check) in &r.validators.checks {
                *pass.entry(name.clone()).or_insert(0usize) += check.is_pass() as usize;
                *skip.entry(name.clone()).or_insert(0usize) += check.is_skipped() as usize;
            }
        }
        Ok(ExperimentSummary {
            n: first.n,
            sigma,
            epsilon: first.epsilon,
            trials,
            full_success_rate: rate(reports.iter().filter(|r| r.full_success).count()),
            color_success_rates,
            mean_tau,
            norm_tau: mean_tau / thresholds::tau_scale(first.n, 2 * sigma),
            min_tau: reports.iter().map(|r| r.tau).min().unwrap_or(0),
            max_tau: reports.iter().map(|r| r.tau).max().unwrap_or(0),
            invariant_pass_rate: rate(reports.iter().filter(|r| r.invariants_hold()).count()),
            validator_pass_rates: pass.into_iter().map(|(k, v)| (k, rate(v))).collect(),
            validator_skip_rates: skip.into_iter().map(|(k, v)| (k, rate(v))).collect(),
        })
    }

    pub fn csv_header(&self) -> String {
        let mut cols: Vec<String> = [
            "n",
            "sigma",
            "epsilon",
            "trials",
            "full_success_rate",
            "mean_tau",
            "norm_tau",
            "min_tau",
            "max_tau",
            "color_success_rates",
            "invariant_pass_rate",
        ]
        .iter()
        .map(|s| s.to_string())
        .collect();
        cols.extend(self.validator_pass_rates.keys().map(|k| format!("pass_{k}")));
        cols.extend(self.validator_skip_rates.keys().map(|k| format!("skip_{k}")));
        cols.join(",")
    }

    pub fn csv_row(&self) -> String {
        let colors: Vec<String> = self.color_success_rates.iter().map(|r| r.to_string()).collect();
        let mut cols = vec![
            self.n.to_string(),
            self.sigma.to_string(),
            self.epsilon.to_string(),
            self.trials.to_string(),
            self.full_success_rate.to_string(),
            self.mean_tau.to_string(),
            self.norm_tau.to_string(),
            self.min_tau.to_string(),
            self.max_tau.to_string(),
            colors.join(";"),
            self.invariant_pass_rate.to_string(),
        ];
        cols.extend(self.validator_pass_rates.values().map(|r| r.to_string()));
        cols.extend(self.validator_skip_rates.values().map(|r| r.to_string()));
        cols.join(",")
    }

    pub fn to_csv(&self) -> String {
        format!("{}\n{}\n", self.csv_header(), self.csv_row())
    }
}

/// Runs all trials and writes one JSON line per trial to `log`, in trial
/// order regardless of parallelism. Returns the summary and, when any dump
/// path is set, the artifacts of trial 0.
pub fn run_experiment<W: Write>(cfg: &ExperimentConfig, mut log: W) -> Result<(ExperimentSummary, Option<Artifacts>)> {
    cfg.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.parallelism)
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    let wants_dumps = cfg.dump_edges.is_some() || cfg.dump_colors.is_some() || cfg.dump_cycles.is_some();
    let batch = (cfg.parallelism as u64 * 4).max(1);
    let mut reports = Vec::with_capacity(cfg.trials as usize);
    let mut artifacts = None;
    let mut next = 0;
    while next < cfg.trials {
        let end = (next + batch).min(cfg.trials);
        let outputs = pool.install(|| {
            (next..end)
                .into_par_iter()
                .map(|i| {
                    let mut trial_cfg = cfg.trial.clone();
                    trial_cfg.keep_artifacts = wants_dumps && i == 0;
                    run_trial(&trial_cfg, i)
                })
                .collect::<Result<Vec<_>>>()
        })?;
        for out in outputs {
            serde_json::to_writer(&mut log, &out.report)?;
            log.write_all(b"\n")?;
            if out.artifacts.is_some() {
                artifacts = out.artifacts;
            }
            reports.push(out.report);
        }
        next = end;
    }
    log.flush()?;
    Ok((ExperimentSummary::from_reports(&reports)?, artifacts))
}

/// Writes the dumps requested in `cfg` from the artifacts of trial 0.
pub fn write_dumps(cfg: &ExperimentConfig, artifacts: &Artifacts, trial_seed: u64) -> Result<()> {
    if let Some(path) = &cfg.dump_edges {
        write_edge_dump(BufWriter::new(File::create(path)?), cfg.trial.n, trial_seed, &artifacts.edges)?;
    }
    if let Some(path) = &cfg.dump_colors {
        write_color_dump(BufWriter::new(File::create(path)?), &artifacts.history)?;
    }
    if let Some(path) = &cfg.dump_cycles {
        let cycles: Vec<(usize, &[u32])> = artifacts.cycles.iter().map(|(c, cyc)| (*c, cyc.as_slice())).collect();
        write_cycle_dump(BufWriter::new(File::create(path)?), &cycles)?;
    }
    Ok(())
}

pub fn read_trial_log<R: BufRead>(reader: R) -> Result<Vec<TrialReport>> {
    let mut reports = Vec::new();
    for line in reader.lines() {
        let line = line?;
        if !line.trim().is_empty() {
            reports.push(serde_json::from_str(&line)?);
        }
    }
    Ok(reports)
}

/// Recomputes the summary from a JSON-lines trial log.
pub fn summarize_log<R: BufRead>(reader: R) -> Result<ExperimentSummary> {
    ExperimentSummary::from_reports(&read_trial_log(reader)?)
}

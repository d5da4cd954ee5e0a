use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use hamcol::harness::{run_experiment, write_dumps, ExperimentConfig, TrialConfig};
use hamcol::Result;

/// Run seeded trials of the online coloring and Hamilton cycle packing.
#[derive(Debug, Parser)]
#[command(name = "hamcol", version)]
struct Cli {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    sigma: Option<u32>,
    #[arg(long)]
    epsilon: Option<f64>,
    /// Master seed.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    trials: Option<u64>,
    #[arg(long)]
    parallelism: Option<usize>,
    /// off, fast or full.
    #[arg(long)]
    validate: Option<String>,
    #[arg(long)]
    strict_boosters: bool,
    /// full-shuffle or rejection; chosen from n if unset.
    #[arg(long)]
    mode: Option<String>,
    #[arg(long)]
    d_full: Option<u32>,
    #[arg(long)]
    omega: Option<f64>,
    #[arg(long)]
    delta_exponent: Option<f64>,
    #[arg(long)]
    small_denominator: Option<f64>,
    #[arg(long)]
    expansion_alpha: Option<f64>,
    #[arg(long)]
    expansion_samples: Option<usize>,
    /// Record per-phase wall-clock times in the trial log.
    #[arg(long)]
    timings: bool,
    /// Edge dump of trial 0.
    #[arg(long)]
    dump_edges: Option<PathBuf>,
    /// Colored-edge dump of trial 0.
    #[arg(long)]
    dump_colors: Option<PathBuf>,
    /// Cycle dump of trial 0.
    #[arg(long)]
    dump_cycles: Option<PathBuf>,
    /// Trial log (JSON lines); stdout if unset.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Summary CSV; stderr if unset.
    #[arg(long)]
    summary: Option<PathBuf>,
    /// key = value settings file; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
}

impl Cli {
    fn overrides(&self) -> Vec<(&'static str, String)> {
        let mut kv = Vec::new();
        let mut put = |k: &'static str, v: Option<String>| {
            if let Some(v) = v {
                kv.push((k, v));
            }
        };
        let s = |x: &Option<PathBuf>| x.as_ref().map(|p| p.display().to_string());
        put("n", self.n.map(|x| x.to_string()));
        put("sigma", self.sigma.map(|x| x.to_string()));
        put("epsilon", self.epsilon.map(|x| x.to_string()));
        put("seed", self.seed.map(|x| x.to_string()));
        put("trials", self.trials.map(|x| x.to_string()));
        put("parallelism", self.parallelism.map(|x| x.to_string()));
        put("validate", self.validate.clone());
        put("strict-boosters", self.strict_boosters.then(|| "true".into()));
        put("mode", self.mode.clone());
        put("d-full", self.d_full.map(|x| x.to_string()));
        put("omega", self.omega.map(|x| x.to_string()));
        put("delta-exponent", self.delta_exponent.map(|x| x.to_string()));
        put("small-denominator", self.small_denominator.map(|x| x.to_string()));
        put("expansion-alpha", self.expansion_alpha.map(|x| x.to_string()));
        put("expansion-samples", self.expansion_samples.map(|x| x.to_string()));
        put("timings", self.timings.then(|| "true".into()));
        put("dump-edges", s(&self.dump_edges));
        put("dump-colors", s(&self.dump_colors));
        put("dump-cycles", s(&self.dump_cycles));
        put("out", s(&self.out));
        put("summary", s(&self.summary));
        kv
    }
}

fn run(cli: Cli) -> Result<()> {
    let mut cfg = ExperimentConfig::new(TrialConfig::default());
    if let Some(path) = &cli.config {
        cfg.apply_file(path)?;
    }
    for (k, v) in cli.overrides() {
        cfg.set(k, &v)?;
    }
    cfg.validate()?;

    let (summary, artifacts) = match &cfg.out {
        Some(path) => run_experiment(&cfg, BufWriter::new(File::create(path)?))?,
        None => run_experiment(&cfg, io::stdout().lock())?,
    };
    if let Some(artifacts) = &artifacts {
        let seed = hamcol::harness::trial_seed(cfg.trial.seed, 0);
        write_dumps(&cfg, artifacts, seed)?;
    }
    match &cfg.summary {
        Some(path) => std::fs::write(path, summary.to_csv())?,
        None => io::stderr().write_all(summary.to_csv().as_bytes())?,
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("hamcol: {e}");
            ExitCode::from(2)
        }
    }
}

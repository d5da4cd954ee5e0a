use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::coloring::MAX_SIGMA;
use crate::error::{Error, Result};
use crate::process::StreamMode;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ValidationLevel {
    Off,
    /// Hard invariants, connectivity and star degrees.
    #[default]
    Fast,
    /// Everything, expansion sampling included.
    Full,
}

impl fmt::Display for ValidationLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ValidationLevel::Off => "off",
            ValidationLevel::Fast => "fast",
            ValidationLevel::Full => "full",
        })
    }
}

impl FromStr for ValidationLevel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "off" => Ok(ValidationLevel::Off),
            "fast" => Ok(ValidationLevel::Fast),
            "full" => Ok(ValidationLevel::Full),
            other => Err(Error::Config(format!("unknown validation level `{other}`"))),
        }
    }
}

pub const DEFAULT_EPSILON: f64 = 0.1;
pub const DEFAULT_DELTA_EXPONENT: f64 = 0.9;
pub const DEFAULT_EXPANSION_SAMPLES: usize = 1000;

/// Parameters of one trial. The seed is the master seed; trial seeds are
/// derived from it and the trial index.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialConfig {
    pub n: usize,
    pub sigma: u32,
    pub epsilon: f64,
    pub seed: u64,
    pub strict_boosters: bool,
    pub validate: ValidationLevel,
    pub mode: Option<StreamMode>,
    pub d_full: Option<u32>,
    pub omega: Option<f64>,
    pub delta_exponent: f64,
    /// Denominator of the small-degree bound `ln n / denominator`; `100 q` if unset.
    pub small_denominator: Option<f64>,
    /// Expansion radius; `1 / (10^6 q)` if unset.
    pub expansion_alpha: Option<f64>,
    pub expansion_samples: usize,
    pub max_secondary_searches: usize,
    /// Record wall-clock phase timings (makes logs run-dependent).
    pub timings: bool,
    /// Keep edges, coloring history and cycles for dumping.
    #[serde(skip)]
    pub keep_artifacts: bool,
}

impl Default for TrialConfig {
    fn default() -> Self {
        TrialConfig {
            n: 1024,
            sigma: 2,
            epsilon: DEFAULT_EPSILON,
            seed: 0,
            strict_boosters: false,
            validate: ValidationLevel::Fast,
            mode: None,
            d_full: None,
            omega: None,
            delta_exponent: DEFAULT_DELTA_EXPONENT,
            small_denominator: None,
            expansion_alpha: None,
            expansion_samples: DEFAULT_EXPANSION_SAMPLES,
            max_secondary_searches: 256,
            timings: false,
            keep_artifacts: false,
        }
    }
}

impl TrialConfig {
    pub fn q(&self) -> u32 {
        2 * self.sigma
    }

    pub fn stream_mode(&self) -> StreamMode {
        self.mode.unwrap_or_else(|| StreamMode::auto(self.n))
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        if self.n < 8 || self.n > u32::MAX as usize {
            return bad(format!("n must be in [8, 2^32), got {}", self.n));
        }
        if self.sigma < 2 || self.sigma > MAX_SIGMA {
            return bad(format!("sigma must be in [2, {MAX_SIGMA}], got {}", self.sigma));
        }
        if !(self.epsilon > 0.0 && self.epsilon <= 1.0) {
            return bad(format!("epsilon must be in (0, 1], got {}", self.epsilon));
        }
        if self.d_full == Some(0) {
            return bad("d_full must be at least 1".into());
        }
        if let Some(w) = self.omega {
            if !(w.is_finite() && w >= 0.0) {
                return bad(format!("omega must be finite and non-negative, got {w}"));
            }
        }
        if !(self.delta_exponent > 0.0 && self.delta_exponent < 1.0) {
            return bad(format!("delta exponent must be in (0, 1), got {}", self.delta_exponent));
        }
        if let Some(d) = self.small_denominator {
            if !(d.is_finite() && d > 0.0) {
                return bad(format!("small denominator must be positive, got {d}"));
            }
        }
        if let Some(a) = self.expansion_alpha {
            if !(a >= 0.0 && a <= 1.0) {
                return bad(format!("expansion alpha must be in [0, 1], got {a}"));
            }
        }
        Ok(())
    }
}

/// A whole run: trial parameters, trial count, thread count and output paths.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ExperimentConfig {
    pub trial: TrialConfig,
    pub trials: u64,
    pub parallelism: usize,
    pub out: Option<PathBuf>,
    pub summary: Option<PathBuf>,
    pub dump_edges: Option<PathBuf>,
    pub dump_colors: Option<PathBuf>,
    pub dump_cycles: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn new(trial: TrialConfig) -> ExperimentConfig {
        ExperimentConfig {
            trial,
            trials: 1,
            parallelism: 1,
            ..ExperimentConfig::default()
        }
    }

    /// Sets one `key = value` setting. Keys use the CLI flag names.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        fn parse<T: FromStr>(key: &str, value: &str) -> Result<T> {
            value
                .parse()
                .map_err(|_| Error::Config(format!("bad value `{value}` for `{key}`")))
        }
        let t = &mut self.trial;
        match key.replace('_', "-").as_str() {
            "n" => t.n = parse(key, value)?,
            "sigma" => t.sigma = parse(key, value)?,
            "epsilon" => t.epsilon = parse(key, value)?,
            "seed" => t.seed = parse(key, value)?,
            "strict-boosters" => t.strict_boosters = parse(key, value)?,
            "validate" => t.validate = value.parse()?,
            "mode" => t.mode = Some(value.parse()?),
            "d-full" => t.d_full = Some(parse(key, value)?),
            "omega" => t.omega = Some(parse(key, value)?),
            "delta-exponent" => t.delta_exponent = parse(key, value)?,
            "small-denominator" => t.small_denominator = Some(parse(key, value)?),
            "expansion-alpha" => t.expansion_alpha = Some(parse(key, value)?),
            "expansion-samples" => t.expansion_samples = parse(key, value)?,
            "max-secondary-searches" => t.max_secondary_searches = parse(key, value)?,
            "timings" => t.timings = parse(key, value)?,
            "trials" => self.trials = parse(key, value)?,
            "parallelism" => self.parallelism = parse(key, value)?,
            "out" => self.out = Some(value.into()),
            "summary" => self.summary = Some(value.into()),
            "dump-edges" => self.dump_edges = Some(value.into()),
            "dump-colors" => self.dump_colors = Some(value.into()),
            "dump-cycles" => self.dump_cycles = Some(value.into()),
            _ => return Err(Error::Config(format!("unknown setting `{key}`"))),
        }
        Ok(())
    }

    /// Applies a `key = value` file. Blank lines and `#` comments are ignored.
    pub fn apply_str(&mut self, text: &str) -> Result<()> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key = value", i + 1)))?;
            self.set(key.trim(), value.trim())?;
        }
        Ok(())
    }

    pub fn apply_file(&mut self, path: &Path) -> Result<()> {
        let text = std::fs::read_to_string(path)?;
        self.apply_str(&text)
    }

    pub fn validate(&self) -> Result<()> {
        self.trial.validate()?;
        if self.trials == 0 {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        if self.parallelism == 0 {
            return Err(Error::Config("parallelism must be at least 1".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn key_value_file() {
        let mut cfg = ExperimentConfig::new(TrialConfig::default());
        cfg.apply_str("# sweep\nn = 512\nsigma=3 # three colors\n\nvalidate = full\nstrict_boosters = true\ntrials = 7\n")
            .unwrap();
        assert_eq!(cfg.trial.n, 512);
        assert_eq!(cfg.trial.sigma, 3);
        assert_eq!(cfg.trial.validate, ValidationLevel::Full);
        assert!(cfg.trial.strict_boosters);
        assert_eq!(cfg.trials, 7);
        assert!(cfg.apply_str("bogus = 1").is_err());
        assert!(cfg.apply_str("n 5").is_err());
        assert!(cfg.apply_str("n = five").is_err());
    }

    #[test]
    fn ranges() {
        let ok = TrialConfig::default();
        assert!(ok.validate().is_ok());
        for bad in [
            TrialConfig { n: 4, ..ok.clone() },
            TrialConfig { sigma: 1, ..ok.clone() },
            TrialConfig { sigma: 17, ..ok.clone() },
            TrialConfig { epsilon: 0.0, ..ok.clone() },
            TrialConfig { d_full: Some(0), ..ok.clone() },
            TrialConfig { delta_exponent: 1.0, ..ok.clone() },
            TrialConfig { expansion_alpha: Some(2.0), ..ok.clone() },
        ] {
            assert!(bad.validate().is_err(), "{bad:?}");
        }
    }

    #[test]
    fn serde_round_trip() {
        let cfg = TrialConfig {
            omega: Some(0.5),
            mode: Some(StreamMode::Rejection),
            ..TrialConfig::default()
        };
        let json = serde_json::to_string(&cfg).unwrap();
        let back: TrialConfig = serde_json::from_str(&json).unwrap();
        assert_eq!(back, cfg);
        assert_eq!(serde_json::to_string(&back).unwrap(), json);
    }
}

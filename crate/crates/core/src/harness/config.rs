use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lasso::{DEFAULT_MAX_SWEEPS, DEFAULT_RIDGE_PENALTY, DEFAULT_TOLERANCE};
use crate::policies::SplittingMode;

/// Number of batches, or `"online"` for a refit after every round.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "BatchesRepr", into = "BatchesRepr")]
pub enum Batches {
    Count(usize),
    Online,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum BatchesRepr {
    Count(usize),
    Word(String),
}

impl TryFrom<BatchesRepr> for Batches {
    type Error = String;

    fn try_from(value: BatchesRepr) -> std::result::Result<Self, String> {
        match value {
            BatchesRepr::Count(0) => Err("m must be >= 1".into()),
            BatchesRepr::Count(n) => Ok(Batches::Count(n)),
            BatchesRepr::Word(w) if w == "online" => Ok(Batches::Online),
            BatchesRepr::Word(w) => Err(format!("m must be a count or \"online\", got \"{w}\"")),
        }
    }
}

impl From<Batches> for BatchesRepr {
    fn from(value: Batches) -> Self {
        match value {
            Batches::Count(n) => BatchesRepr::Count(n),
            Batches::Online => BatchesRepr::Word("online".into()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum PolicyKind {
    #[default]
    Lbgl,
    RidgeGreedy,
    Random,
    Oracle,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum EnvSpec {
    #[default]
    Gaussian,
    HardInstance {
        stage: usize,
        /// Number of stages in the schedule; defaults to the batch count.
        #[serde(default)]
        stages: Option<usize>,
    },
    Csv {
        path: PathBuf,
        label: String,
        #[serde(default = "default_true")]
        shuffle: bool,
        #[serde(default)]
        reward_correct: f64,
        #[serde(default = "default_reward_incorrect")]
        reward_incorrect: f64,
    },
}

fn default_true() -> bool {
    true
}

fn default_reward_incorrect() -> f64 {
    -1.0
}

fn default_arms() -> usize {
    2
}

fn default_sigma() -> f64 {
    0.5
}

fn default_one() -> f64 {
    1.0
}

fn default_replications() -> usize {
    1
}

fn default_tolerance() -> f64 {
    DEFAULT_TOLERANCE
}

fn default_max_sweeps() -> usize {
    DEFAULT_MAX_SWEEPS
}

fn default_ridge() -> f64 {
    DEFAULT_RIDGE_PENALTY
}

/// Every knob of an experiment. Serialized as a flat JSON object.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(rename = "t", alias = "horizon")]
    pub horizon: usize,
    #[serde(rename = "d", alias = "dim", default)]
    pub dim: usize,
    #[serde(rename = "k", alias = "num_arms", default = "default_arms")]
    pub num_arms: usize,
    #[serde(default)]
    pub s0_true: usize,
    pub s0_bound: usize,
    #[serde(rename = "m", alias = "num_batches")]
    pub batches: Batches,
    #[serde(default = "default_sigma")]
    pub noise_sigma: f64,
    #[serde(default)]
    pub policy: PolicyKind,
    #[serde(default = "default_one")]
    pub lambda_scale: f64,
    #[serde(default)]
    pub splitting: SplittingMode,
    #[serde(default = "default_replications")]
    pub replications: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub env: EnvSpec,
    /// Density constant used only for bound overlays.
    #[serde(default = "default_one")]
    pub gamma: f64,
    #[serde(default)]
    pub out: Option<PathBuf>,
    #[serde(default = "default_one")]
    pub theta_radius: f64,
    #[serde(default = "default_ridge")]
    pub ridge_penalty: f64,
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
    #[serde(default = "default_max_sweeps")]
    pub max_sweeps: usize,
    /// Cap on concurrently running replications.
    #[serde(default)]
    pub threads: Option<usize>,
}

impl ExperimentConfig {
    /// Synthetic Gaussian experiment with defaults for everything else.
    pub fn gaussian(horizon: usize, dim: usize, s0: usize, batches: Batches) -> Self {
        Self {
            horizon,
            dim,
            num_arms: 2,
            s0_true: s0,
            s0_bound: s0,
            batches,
            noise_sigma: default_sigma(),
            policy: PolicyKind::Lbgl,
            lambda_scale: 1.0,
            splitting: SplittingMode::Pooled,
            replications: 1,
            seed: 0,
            env: EnvSpec::Gaussian,
            gamma: 1.0,
            out: None,
            theta_radius: 1.0,
            ridge_penalty: DEFAULT_RIDGE_PENALTY,
            tolerance: DEFAULT_TOLERANCE,
            max_sweeps: DEFAULT_MAX_SWEEPS,
            threads: None,
        }
    }

    pub fn from_json_str(text: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let config = Self::from_json_str(&text).map_err(|e| Error::Json {
            path: path.to_owned(),
            source: e,
        })?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidArgument(msg));
        if self.horizon == 0 {
            return bad("t must be >= 1".into());
        }
        if self.replications == 0 {
            return bad("replications must be >= 1".into());
        }
        if !(self.lambda_scale > 0.0) {
            return bad(format!("lambda_scale must be > 0, got {}", self.lambda_scale));
        }
        if !(self.noise_sigma >= 0.0) {
            return bad(format!("noise_sigma must be >= 0, got {}", self.noise_sigma));
        }
        if self.threads == Some(0) {
            return bad("threads must be >= 1".into());
        }
        if let Batches::Count(m) = self.batches {
            if m > self.horizon {
                return bad(format!("m = {m} exceeds t = {}", self.horizon));
            }
        }
        if self.s0_bound == 0 || self.s0_bound > self.horizon {
            return bad(format!("need 1 <= s0_bound <= t, got {}", self.s0_bound));
        }
        match self.env {
            EnvSpec::Csv { .. } => {}
            _ => {
                if !(self.s0_true <= self.s0_bound && self.s0_bound <= self.dim) {
                    return bad(format!(
                        "need s0_true <= s0_bound <= d, got {} / {} / {}",
                        self.s0_true, self.s0_bound, self.dim
                    ));
                }
                if self.num_arms < 2 {
                    return bad(format!("k must be >= 2, got {}", self.num_arms));
                }
            }
        }
        Ok(())
    }
}

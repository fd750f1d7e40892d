use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::{Batches, EnvSpec, ExperimentConfig, PolicyKind};
use super::write_atomic;
use crate::envs::{
    make_classification_env_from_csv, make_gaussian_env, make_hard_instance_env, CsvEnvOptions, Environment,
    GaussianEnvConfig,
};
use crate::error::{Error, Result};
use crate::policies::{
    run_baseline, run_lbgl, run_online_lbgl, BaselineConfig, BaselineKind, LassoSettings, LbglConfig,
};
use crate::seed::replication_seed;
use crate::trace::RegretTrace;

/// Environment variable capping the number of replications run at once.
pub const THREADS_ENV: &str = "BATCHBANDIT_THREADS";

/// Aggregate over replications, as written to `summary.json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSummary {
    pub t: Vec<usize>,
    pub mean_cum: Vec<f64>,
    /// Half-width of the normal 95% interval for the mean; zero for a single
    /// replication.
    pub ci_half: Vec<f64>,
    pub min_cum: Vec<f64>,
    pub max_cum: Vec<f64>,
    /// Final cumulative regret of each replication, in replication order.
    pub final_cum: Vec<f64>,
    /// Reward gap the environment reports, if any (classification data:
    /// correct minus incorrect reward).
    pub reward_gap: Option<f64>,
    pub config: ExperimentConfig,
    pub wall_seconds: f64,
}

impl ExperimentSummary {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        serde_json::from_str(&text).map_err(|e| Error::Json {
            path: path.to_owned(),
            source: e,
        })
    }
}

#[derive(Debug, Clone)]
pub struct ExperimentResult {
    pub summary: ExperimentSummary,
    pub traces: Vec<RegretTrace>,
}

/// Pointwise statistics of the cumulative regret curves.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveStats {
    pub mean: Vec<f64>,
    pub ci_half: Vec<f64>,
    pub min: Vec<f64>,
    pub max: Vec<f64>,
}

/// Pointwise mean, 95% half-width, min and max of the cumulative curves.
/// Sums run in replication order so the result does not depend on how the
/// replications were scheduled.
pub fn summarize_traces(traces: &[RegretTrace]) -> Result<CurveStats> {
    let first = traces
        .first()
        .ok_or_else(|| Error::InvalidArgument("no traces to summarize".into()))?;
    let horizon = first.len();
    if let Some(bad) = traces.iter().find(|tr| tr.len() != horizon) {
        return Err(Error::DimensionMismatch(format!(
            "replication {} has {} rounds, expected {horizon}",
            bad.replication,
            bad.len()
        )));
    }
    let r = traces.len() as f64;
    let mut mean = Vec::with_capacity(horizon);
    let mut ci = Vec::with_capacity(horizon);
    let mut min = Vec::with_capacity(horizon);
    let mut max = Vec::with_capacity(horizon);
    for i in 0..horizon {
        let values = traces.iter().map(|tr| tr.cumulative[i]);
        let lo = values.clone().fold(f64::INFINITY, f64::min);
        let hi = values.clone().fold(f64::NEG_INFINITY, f64::max);
        let m = (values.clone().sum::<f64>() / r).clamp(lo, hi);
        let half = if traces.len() > 1 {
            let var = values.map(|v| (v - m).powi(2)).sum::<f64>() / (r - 1.0);
            1.96 * (var / r).sqrt()
        } else {
            0.0
        };
        mean.push(m);
        ci.push(half);
        min.push(lo);
        max.push(hi);
    }
    Ok(CurveStats {
        mean,
        ci_half: ci,
        min,
        max,
    })
}

fn build_env(config: &ExperimentConfig, seed: u64) -> Result<Box<dyn Environment>> {
    Ok(match &config.env {
        EnvSpec::Gaussian => {
            let mut g = GaussianEnvConfig::new(
                config.horizon,
                config.dim,
                config.num_arms,
                config.s0_true,
                config.noise_sigma,
            );
            g.radius = config.theta_radius;
            Box::new(make_gaussian_env(&g, seed)?)
        }
        EnvSpec::HardInstance { stage, stages } => {
            let stages = match (stages, config.batches) {
                (Some(s), _) => *s,
                (None, Batches::Count(m)) => m,
                (None, Batches::Online) => {
                    return Err(Error::InvalidArgument(
                        "hard_instance with m = \"online\" needs env.stages".into(),
                    ))
                }
            };
            Box::new(make_hard_instance_env(
                config.horizon,
                config.dim,
                config.s0_true,
                stages,
                *stage,
                seed,
            )?)
        }
        EnvSpec::Csv {
            path,
            label,
            shuffle,
            reward_correct,
            reward_incorrect,
        } => {
            let options = CsvEnvOptions {
                label_column: label.clone(),
                reward_correct: *reward_correct,
                reward_incorrect: *reward_incorrect,
                shuffle: *shuffle,
                seed,
            };
            let mut env = make_classification_env_from_csv(path, &options)?;
            env.truncate(config.horizon)?;
            Box::new(env)
        }
    })
}

/// Runs replication `r` of the experiment. Everything random derives from
/// `(config.seed, r)`, so a replication can be rerun on its own.
pub fn run_replication(config: &ExperimentConfig, r: usize) -> Result<RegretTrace> {
    let seed = replication_seed(config.seed, r);
    let env = build_env(config, seed)?;
    let lasso = LassoSettings {
        lambda_scale: config.lambda_scale,
        tolerance: config.tolerance,
        max_sweeps: config.max_sweeps,
    };
    let num_batches = match config.batches {
        Batches::Count(m) => m,
        Batches::Online => env.horizon(),
    };
    let baseline = |kind| {
        let mut b = BaselineConfig::new(kind);
        b.num_batches = num_batches;
        b.s0_bound = config.s0_bound;
        b.ridge_penalty = config.ridge_penalty;
        b.seed = seed;
        run_baseline(env.as_ref(), &b)
    };
    let mut trace = match (config.policy, config.batches) {
        (PolicyKind::Lbgl, Batches::Online) => run_online_lbgl(env.as_ref(), &lasso)?,
        (PolicyKind::Lbgl, Batches::Count(m)) => {
            let mut c = LbglConfig::new(m, config.s0_bound);
            c.splitting = config.splitting;
            c.lasso = lasso;
            run_lbgl(env.as_ref(), &c)?.trace
        }
        (PolicyKind::RidgeGreedy, _) => baseline(BaselineKind::RidgeGreedy)?,
        (PolicyKind::Random, _) => baseline(BaselineKind::Random)?,
        (PolicyKind::Oracle, _) => baseline(BaselineKind::Oracle)?,
    };
    trace.replication = r;
    Ok(trace)
}

/// Number of worker threads: the smaller of `config.threads` and
/// `BATCHBANDIT_THREADS`, or rayon's default when neither is set.
pub fn thread_cap(config: &ExperimentConfig) -> Option<usize> {
    let from_env = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0);
    match (config.threads, from_env) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, b) => a.or(b),
    }
}

/// Runs every replication and aggregates. With `config.out` set, writes
/// `rep_<r>.csv` per replication and `summary.json` into that directory.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentResult> {
    config.validate()?;
    let started = Instant::now();
    if let Some(dir) = &config.out {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(thread_cap(config).unwrap_or(0))
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    let outcomes: Vec<Result<RegretTrace>> = pool.install(|| {
        (0..config.replications)
            .into_par_iter()
            .map(|r| {
                let trace = run_replication(config, r)?;
                if let Some(dir) = &config.out {
                    trace.save(&dir.join(format!("rep_{r}.csv")))?;
                }
                Ok(trace)
            })
            .collect()
    });
    let mut traces = Vec::with_capacity(outcomes.len());
    for (r, outcome) in outcomes.into_iter().enumerate() {
        traces.push(outcome.map_err(|e| Error::Replication {
            replication: r,
            source: Box::new(e),
        })?);
    }

    let stats = summarize_traces(&traces)?;
    let reward_gap = build_env(config, replication_seed(config.seed, 0))?.reward_gap();
    let summary = ExperimentSummary {
        t: (1..=stats.mean.len()).collect(),
        mean_cum: stats.mean,
        ci_half: stats.ci_half,
        min_cum: stats.min,
        max_cum: stats.max,
        final_cum: traces.iter().map(RegretTrace::total).collect(),
        reward_gap,
        config: config.clone(),
        wall_seconds: started.elapsed().as_secs_f64(),
    };
    if let Some(dir) = &config.out {
        let path = dir.join("summary.json");
        let mut text = serde_json::to_vec_pretty(&summary).map_err(|e| Error::Json {
            path: path.clone(),
            source: e,
        })?;
        text.push(b'\n');
        write_atomic(&path, &text)?;
    }
    Ok(ExperimentResult { summary, traces })
}

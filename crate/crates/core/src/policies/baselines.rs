use nalgebra::DVector;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::grid::compute_grid;
use super::lbgl::select_action;
use crate::envs::Environment;
use crate::error::Result;
use crate::lasso::{fit_ridge_stats, SufficientStats, DEFAULT_RIDGE_PENALTY};
use crate::seed::{stream_rng, Stream};
use crate::trace::RegretTrace;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BaselineKind {
    /// Greedy on a ridge fit refreshed at the same batch boundaries as LBGL.
    RidgeGreedy,
    Random,
    /// Pulls the arm with the highest mean reward.
    Oracle,
}

#[derive(Debug, Clone)]
pub struct BaselineConfig {
    pub kind: BaselineKind,
    pub num_batches: usize,
    pub s0_bound: usize,
    pub ridge_penalty: f64,
    pub seed: u64,
}

impl BaselineConfig {
    pub fn new(kind: BaselineKind) -> Self {
        Self {
            kind,
            num_batches: 1,
            s0_bound: 1,
            ridge_penalty: DEFAULT_RIDGE_PENALTY,
            seed: 0,
        }
    }
}

pub fn run_baseline<E: Environment + ?Sized>(env: &E, config: &BaselineConfig) -> Result<RegretTrace> {
    let horizon = env.horizon();
    let mut trace = RegretTrace::with_capacity(0, horizon);
    match config.kind {
        BaselineKind::Oracle => {
            for t in 1..=horizon {
                let round = env.observe(t)?;
                let mut best = 0;
                for (a, &m) in round.means.iter().enumerate() {
                    if m > round.means[best] {
                        best = a;
                    }
                }
                trace.push(round.regret(best)?, best);
            }
        }
        BaselineKind::Random => {
            let mut rng = stream_rng(config.seed, 0, Stream::Policy);
            for t in 1..=horizon {
                let round = env.observe(t)?;
                let arm = rng.random_range(0..env.num_arms());
                trace.push(round.regret(arm)?, arm);
            }
        }
        BaselineKind::RidgeGreedy => {
            let grid = compute_grid(horizon, config.s0_bound, config.num_batches)?;
            let dim = env.dim();
            let mut theta = DVector::zeros(dim);
            let mut stats = SufficientStats::new(dim);
            for m in 1..=grid.num_batches() {
                for t in grid.batch(m) {
                    let round = env.observe(t)?;
                    let arm = select_action(&theta, &round.contexts);
                    trace.push(round.regret(arm)?, arm);
                    stats.push(&round.contexts.arms[arm], round.realized[arm]);
                }
                theta = fit_ridge_stats(&stats, config.ridge_penalty)?;
            }
        }
    }
    Ok(trace)
}

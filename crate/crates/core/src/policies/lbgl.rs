//! LASSO batch greedy learning.
//!
//! The horizon is cut into `M` batches by a static grid. Inside batch `m`
//! every action is greedy with respect to the estimate fitted at the end of
//! batch `m - 1` (the zero vector for the first batch). Rewards of a batch
//! are only used once the batch is over.

use nalgebra::DVector;

use super::grid::{assign_intervals, compute_grid, splitting_union, Grid, SplittingMode};
use crate::envs::{Environment, RoundContexts};
use crate::error::{Error, Result};
use crate::lasso::{fit_lasso_stats, SufficientStats, DEFAULT_MAX_SWEEPS, DEFAULT_TOLERANCE};
use crate::trace::RegretTrace;

/// Arm maximizing `xᵀθ`; exact ties go to the lowest index.
pub fn select_action(theta: &DVector<f64>, contexts: &RoundContexts) -> usize {
    let mut best = 0;
    let mut best_score = f64::NEG_INFINITY;
    for (a, x) in contexts.arms.iter().enumerate() {
        let score = x.dot(theta);
        if score > best_score {
            best = a;
            best_score = score;
        }
    }
    best
}

/// `scale * 5 * sqrt(2 log K (log d + 2 log T) / n)`.
pub fn lambda_schedule(num_arms: usize, dim: usize, horizon: usize, fit_size: usize, scale: f64) -> f64 {
    let k = num_arms as f64;
    let d = dim as f64;
    let t = horizon as f64;
    scale * 5.0 * (2.0 * k.ln() * (d.ln() + 2.0 * t.ln()) / fit_size as f64).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LassoSettings {
    /// Multiplier on the theoretical penalty schedule.
    pub lambda_scale: f64,
    pub tolerance: f64,
    pub max_sweeps: usize,
}

impl Default for LassoSettings {
    fn default() -> Self {
        Self {
            lambda_scale: 1.0,
            tolerance: DEFAULT_TOLERANCE,
            max_sweeps: DEFAULT_MAX_SWEEPS,
        }
    }
}

#[derive(Debug, Clone)]
pub struct LbglConfig {
    pub num_batches: usize,
    pub s0_bound: usize,
    pub splitting: SplittingMode,
    pub lasso: LassoSettings,
    /// Use these boundaries instead of solving for the grid.
    pub grid: Option<Grid>,
    /// Keep the pulled context of every round in the run output.
    pub record_history: bool,
}

impl LbglConfig {
    pub fn new(num_batches: usize, s0_bound: usize) -> Self {
        Self {
            num_batches,
            s0_bound,
            splitting: SplittingMode::default(),
            lasso: LassoSettings::default(),
            grid: None,
            record_history: false,
        }
    }
}

/// Summary of the refit at the end of one batch.
#[derive(Debug, Clone, PartialEq)]
pub struct BatchFit {
    pub batch: usize,
    pub end: usize,
    pub fit_size: usize,
    pub lambda: f64,
    pub sweeps: usize,
    pub converged: bool,
    pub nonzeros: usize,
}

#[derive(Debug, Clone)]
pub struct LbglRun {
    pub trace: RegretTrace,
    pub grid: Grid,
    pub fits: Vec<BatchFit>,
    /// Estimate in force during each batch: entry `m - 1` is θ̂_{m-1}.
    pub estimates: Vec<DVector<f64>>,
    pub final_estimate: DVector<f64>,
    pub warnings: Vec<String>,
    /// Pulled contexts by round, when requested.
    pub history: Option<Vec<DVector<f64>>>,
}

pub fn run_lbgl<E: Environment + ?Sized>(env: &E, config: &LbglConfig) -> Result<LbglRun> {
    let horizon = env.horizon();
    let dim = env.dim();
    let num_arms = env.num_arms();
    let grid = match &config.grid {
        Some(g) => {
            if g.horizon() != horizon {
                return Err(Error::InvalidArgument(format!(
                    "grid ends at {} but the environment horizon is {horizon}",
                    g.horizon()
                )));
            }
            g.clone()
        }
        None => compute_grid(horizon, config.s0_bound, config.num_batches)?,
    };
    let partition = assign_intervals(&grid);
    let split = config.splitting == SplittingMode::Split;
    let keep_rows = split || config.record_history;

    let mut theta = DVector::zeros(dim);
    let mut pooled = SufficientStats::new(dim);
    let mut rows: Vec<(DVector<f64>, f64)> = Vec::new();
    let mut trace = RegretTrace::with_capacity(0, horizon);
    let mut fits = Vec::with_capacity(grid.num_batches());
    let mut estimates = Vec::with_capacity(grid.num_batches());
    let mut warnings = Vec::new();

    for m in 1..=grid.num_batches() {
        estimates.push(theta.clone());
        for t in grid.batch(m) {
            let round = env.observe(t)?;
            let arm = select_action(&theta, &round.contexts);
            trace.push(round.regret(arm)?, arm);
            let reward = round.realized[arm];
            let x = round.contexts.arms.into_iter().nth(arm).expect("arm index in range");
            if !split {
                pooled.push(&x, reward);
            }
            if keep_rows {
                rows.push((x, reward));
            }
        }

        let split_stats;
        let stats = if split {
            let mut s = SufficientStats::new(dim);
            for t in splitting_union(&partition, m, SplittingMode::Split) {
                let (x, r) = &rows[t - 1];
                s.push(x, *r);
            }
            split_stats = s;
            &split_stats
        } else {
            &pooled
        };

        let end = grid.boundaries()[m - 1];
        if stats.n() == 0 {
            warnings.push(format!(
                "batch {m}: empty fit set, keeping the previous estimate"
            ));
            continue;
        }
        let lambda = lambda_schedule(num_arms, dim, horizon, stats.n(), config.lasso.lambda_scale);
        let sol = fit_lasso_stats(stats, lambda, config.lasso.tolerance, config.lasso.max_sweeps)?;
        if !sol.converged {
            warnings.push(format!(
                "batch {m}: lasso stopped after {} sweeps without converging",
                sol.sweeps
            ));
        }
        fits.push(BatchFit {
            batch: m,
            end,
            fit_size: stats.n(),
            lambda,
            sweeps: sol.sweeps,
            converged: sol.converged,
            nonzeros: sol.coefficients.iter().filter(|&&v| v != 0.0).count(),
        });
        theta = sol.coefficients;
    }

    let history = config
        .record_history
        .then(|| rows.into_iter().map(|(x, _)| x).collect());
    Ok(LbglRun {
        trace,
        grid,
        fits,
        estimates,
        final_estimate: theta,
        warnings,
        history,
    })
}

/// Refits after every round on all data so far with `λ_t` from the same
/// schedule at `n = t`.
pub fn run_online_lbgl<E: Environment + ?Sized>(env: &E, lasso: &LassoSettings) -> Result<RegretTrace> {
    let horizon = env.horizon();
    let dim = env.dim();
    let num_arms = env.num_arms();
    let mut theta = DVector::zeros(dim);
    let mut stats = SufficientStats::new(dim);
    let mut trace = RegretTrace::with_capacity(0, horizon);
    for t in 1..=horizon {
        let round = env.observe(t)?;
        let arm = select_action(&theta, &round.contexts);
        trace.push(round.regret(arm)?, arm);
        stats.push(&round.contexts.arms[arm], round.realized[arm]);
        let lambda = lambda_schedule(num_arms, dim, horizon, stats.n(), lasso.lambda_scale);
        theta = fit_lasso_stats(&stats, lambda, lasso.tolerance, lasso.max_sweeps)?.coefficients;
    }
    Ok(trace)
}

/// Greedy play with a frozen parameter.
pub fn run_fixed_greedy<E: Environment + ?Sized>(env: &E, theta: &DVector<f64>) -> Result<RegretTrace> {
    if theta.len() != env.dim() {
        return Err(Error::DimensionMismatch(format!(
            "theta has {} entries, environment dimension is {}",
            theta.len(),
            env.dim()
        )));
    }
    let mut trace = RegretTrace::with_capacity(0, env.horizon());
    for t in 1..=env.horizon() {
        let round = env.observe(t)?;
        let arm = select_action(theta, &round.contexts);
        trace.push(round.regret(arm)?, arm);
    }
    Ok(trace)
}

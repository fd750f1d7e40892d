//! L1-penalized least squares by cyclic coordinate descent, plus a ridge
//! solve used by the ridge-greedy baseline.
//!
//! All fits minimize
//!
//! ```text
//! (1/(2n)) * ||y - X θ||² + λ ||θ||₁
//! ```
//!
//! Two equivalent entry points exist. [`fit_lasso`] works on an explicit
//! design matrix and keeps a residual vector. [`fit_lasso_stats`] works on
//! accumulated sufficient statistics (`XᵀX`, `Xᵀy`, `yᵀy`, `n`) and keeps the
//! gradient instead, so that a policy which refits after every round pays
//! `O(d)` per coefficient change rather than `O(n)`.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

pub const DEFAULT_TOLERANCE: f64 = 1e-7;
pub const DEFAULT_MAX_SWEEPS: usize = 10_000;
pub const DEFAULT_RIDGE_PENALTY: f64 = 1.0;

#[derive(Debug, Clone)]
pub struct RegressionProblem {
    design: DMatrix<f64>,
    response: DVector<f64>,
    penalty: f64,
}

impl RegressionProblem {
    pub fn new(design: DMatrix<f64>, response: DVector<f64>, penalty: f64) -> Result<Self> {
        if design.nrows() == 0 || design.ncols() == 0 {
            return Err(Error::InvalidArgument(format!(
                "design must be non-empty, got {}x{}",
                design.nrows(),
                design.ncols()
            )));
        }
        if response.len() != design.nrows() {
            return Err(Error::DimensionMismatch(format!(
                "response has {} entries, design has {} rows",
                response.len(),
                design.nrows()
            )));
        }
        if !(penalty >= 0.0) || !penalty.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "penalty must be finite and >= 0, got {penalty}"
            )));
        }
        Ok(Self {
            design,
            response,
            penalty,
        })
    }

    /// Builds a problem from row vectors.
    pub fn from_rows(rows: &[Vec<f64>], response: &[f64], penalty: f64) -> Result<Self> {
        let n = rows.len();
        let d = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != d) {
            return Err(Error::DimensionMismatch("ragged design rows".into()));
        }
        let design = DMatrix::from_fn(n, d, |i, j| rows[i][j]);
        Self::new(design, DVector::from_column_slice(response), penalty)
    }

    pub fn design(&self) -> &DMatrix<f64> {
        &self.design
    }

    pub fn response(&self) -> &DVector<f64> {
        &self.response
    }

    pub fn penalty(&self) -> f64 {
        self.penalty
    }

    pub fn with_penalty(&self, penalty: f64) -> Result<Self> {
        Self::new(self.design.clone(), self.response.clone(), penalty)
    }

    pub fn n(&self) -> usize {
        self.design.nrows()
    }

    pub fn d(&self) -> usize {
        self.design.ncols()
    }

    fn check_finite(&self) -> Result<()> {
        if self.design.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("design"));
        }
        if self.response.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("response"));
        }
        Ok(())
    }

    fn check_theta(&self, theta: &DVector<f64>) -> Result<()> {
        if theta.len() != self.d() {
            return Err(Error::DimensionMismatch(format!(
                "theta has {} entries, design has {} columns",
                theta.len(),
                self.d()
            )));
        }
        Ok(())
    }

    /// `(1/n) Xᵀ (y - X θ)`, the negative gradient of the smooth part.
    pub fn correlations(&self, theta: &DVector<f64>) -> Result<DVector<f64>> {
        self.check_theta(theta)?;
        let residual = &self.response - &self.design * theta;
        Ok(self.design.tr_mul(&residual) / self.n() as f64)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegressionSolution {
    pub coefficients: DVector<f64>,
    pub objective: f64,
    pub sweeps: usize,
    pub converged: bool,
}

pub fn soft_threshold(z: f64, lambda: f64) -> f64 {
    debug_assert!(lambda >= 0.0);
    if z > lambda {
        z - lambda
    } else if z < -lambda {
        z + lambda
    } else {
        0.0
    }
}

pub fn lasso_objective(problem: &RegressionProblem, theta: &DVector<f64>) -> Result<f64> {
    problem.check_theta(theta)?;
    let residual = &problem.response - &problem.design * theta;
    let n = problem.n() as f64;
    Ok(residual.norm_squared() / (2.0 * n) + problem.penalty * theta.lp_norm(1))
}

/// Largest violation of the LASSO optimality conditions at `theta`.
///
/// For `θ_j = 0` this is `max(0, |c_j| - λ)`; for `θ_j ≠ 0` it is
/// `|c_j - λ sign(θ_j)|`, where `c = (1/n) Xᵀ(y - Xθ)`.
pub fn kkt_violation(problem: &RegressionProblem, theta: &DVector<f64>) -> Result<f64> {
    let corr = problem.correlations(theta)?;
    Ok(kkt_from_correlations(&corr, theta, problem.penalty))
}

pub(crate) fn kkt_from_correlations(corr: &DVector<f64>, theta: &DVector<f64>, lambda: f64) -> f64 {
    corr.iter()
        .zip(theta.iter())
        .map(|(&c, &b)| {
            if b == 0.0 {
                (c.abs() - lambda).max(0.0)
            } else {
                (c - lambda * b.signum()).abs()
            }
        })
        .fold(0.0, f64::max)
}

pub fn fit_lasso(
    problem: &RegressionProblem,
    tolerance: f64,
    max_sweeps: usize,
) -> Result<RegressionSolution> {
    fit_lasso_impl(problem, tolerance, max_sweeps, None)
}

/// Same as [`fit_lasso`], also returning the objective value after each sweep
/// (entry 0 is the objective at the zero start).
pub fn fit_lasso_traced(
    problem: &RegressionProblem,
    tolerance: f64,
    max_sweeps: usize,
) -> Result<(RegressionSolution, Vec<f64>)> {
    let mut history = Vec::new();
    let solution = fit_lasso_impl(problem, tolerance, max_sweeps, Some(&mut history))?;
    Ok((solution, history))
}

fn check_solver_args(tolerance: f64, max_sweeps: usize) -> Result<()> {
    if !(tolerance > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "tolerance must be > 0, got {tolerance}"
        )));
    }
    if max_sweeps == 0 {
        return Err(Error::InvalidArgument("max_sweeps must be >= 1".into()));
    }
    Ok(())
}

fn fit_lasso_impl(
    problem: &RegressionProblem,
    tolerance: f64,
    max_sweeps: usize,
    mut history: Option<&mut Vec<f64>>,
) -> Result<RegressionSolution> {
    check_solver_args(tolerance, max_sweeps)?;
    problem.check_finite()?;

    let n = problem.n() as f64;
    let d = problem.d();
    let lambda = problem.penalty;
    let x = &problem.design;
    let col_sq: Vec<f64> = (0..d).map(|j| x.column(j).norm_squared() / n).collect();

    let mut theta = DVector::<f64>::zeros(d);
    let mut residual = problem.response.clone();
    let objective_of = |residual: &DVector<f64>, theta: &DVector<f64>| {
        residual.norm_squared() / (2.0 * n) + lambda * theta.lp_norm(1)
    };
    if let Some(h) = history.as_deref_mut() {
        h.push(objective_of(&residual, &theta));
    }

    let mut sweeps = 0;
    let mut converged = false;
    while sweeps < max_sweeps {
        sweeps += 1;
        let mut max_change = 0.0f64;
        for j in 0..d {
            // zero column: the penalty pins the coefficient at 0
            if col_sq[j] == 0.0 {
                continue;
            }
            let col = x.column(j);
            let old = theta[j];
            let z = col.dot(&residual) / n + col_sq[j] * old;
            let new = soft_threshold(z, lambda) / col_sq[j];
            let delta = new - old;
            if delta != 0.0 {
                residual.axpy(-delta, &col, 1.0);
                theta[j] = new;
                max_change = max_change.max(delta.abs());
            }
        }
        if let Some(h) = history.as_deref_mut() {
            h.push(objective_of(&residual, &theta));
        }
        if max_change <= tolerance {
            converged = true;
            break;
        }
    }

    let objective = lasso_objective(problem, &theta)?;
    Ok(RegressionSolution {
        coefficients: theta,
        objective,
        sweeps,
        converged,
    })
}

/// Solves `(XᵀX/n + λ I) θ = Xᵀy/n`.
pub fn fit_ridge(problem: &RegressionProblem) -> Result<DVector<f64>> {
    problem.check_finite()?;
    let stats = SufficientStats::from_problem(problem);
    fit_ridge_stats(&stats, problem.penalty)
}

/// Running sums `XᵀX`, `Xᵀy`, `yᵀy` and the row count.
///
/// Rows are folded in push order, so two accumulators fed the same rows in
/// the same order hold bit-identical sums.
#[derive(Debug, Clone)]
pub struct SufficientStats {
    gram: DMatrix<f64>,
    xty: DVector<f64>,
    yty: f64,
    n: usize,
}

impl SufficientStats {
    pub fn new(d: usize) -> Self {
        Self {
            gram: DMatrix::zeros(d, d),
            xty: DVector::zeros(d),
            yty: 0.0,
            n: 0,
        }
    }

    pub fn from_problem(problem: &RegressionProblem) -> Self {
        Self {
            gram: problem.design.tr_mul(&problem.design),
            xty: problem.design.tr_mul(&problem.response),
            yty: problem.response.norm_squared(),
            n: problem.n(),
        }
    }

    pub fn push(&mut self, x: &DVector<f64>, y: f64) {
        debug_assert_eq!(x.len(), self.xty.len());
        self.gram.ger(1.0, x, x, 1.0);
        self.xty.axpy(y, x, 1.0);
        self.yty += y * y;
        self.n += 1;
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.xty.len()
    }

    pub fn gram(&self) -> &DMatrix<f64> {
        &self.gram
    }
}

/// Coordinate descent on sufficient statistics. Same update sequence and
/// stopping rule as [`fit_lasso`]; the two agree to rounding.
pub fn fit_lasso_stats(
    stats: &SufficientStats,
    lambda: f64,
    tolerance: f64,
    max_sweeps: usize,
) -> Result<RegressionSolution> {
    check_solver_args(tolerance, max_sweeps)?;
    if stats.n == 0 {
        return Err(Error::InvalidArgument("no observations".into()));
    }
    if !(lambda >= 0.0) || !lambda.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "penalty must be finite and >= 0, got {lambda}"
        )));
    }
    if stats.gram.iter().any(|v| !v.is_finite()) || stats.xty.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("sufficient statistics"));
    }

    let n = stats.n as f64;
    let d = stats.d();
    let diag: Vec<f64> = (0..d).map(|j| stats.gram[(j, j)] / n).collect();
    let mut theta = DVector::<f64>::zeros(d);
    // gradient = (Xᵀy - XᵀX θ) / n
    let mut grad = &stats.xty / n;

    let mut sweeps = 0;
    let mut converged = false;
    while sweeps < max_sweeps {
        sweeps += 1;
        let mut max_change = 0.0f64;
        for j in 0..d {
            if diag[j] == 0.0 {
                continue;
            }
            let old = theta[j];
            let z = grad[j] + diag[j] * old;
            let new = soft_threshold(z, lambda) / diag[j];
            let delta = new - old;
            if delta != 0.0 {
                grad.axpy(-delta / n, &stats.gram.column(j), 1.0);
                theta[j] = new;
                max_change = max_change.max(delta.abs());
            }
        }
        if max_change <= tolerance {
            converged = true;
            break;
        }
    }

    // RSS/n = yᵀy/n - θᵀ(Xᵀy/n) - θᵀ grad
    let rss_n = stats.yty / n - theta.dot(&stats.xty) / n - theta.dot(&grad);
    let objective = 0.5 * rss_n.max(0.0) + lambda * theta.lp_norm(1);
    Ok(RegressionSolution {
        coefficients: theta,
        objective,
        sweeps,
        converged,
    })
}

pub fn fit_ridge_stats(stats: &SufficientStats, lambda: f64) -> Result<DVector<f64>> {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "ridge penalty must be finite and > 0, got {lambda}"
        )));
    }
    if stats.n == 0 {
        return Err(Error::InvalidArgument("no observations".into()));
    }
    let n = stats.n as f64;
    let d = stats.d();
    let system = &stats.gram / n + DMatrix::<f64>::identity(d, d) * lambda;
    let rhs = &stats.xty / n;
    let chol = system
        .cholesky()
        .ok_or_else(|| Error::Singular("regularized normal equations".into()))?;
    Ok(chol.solve(&rhs))
}

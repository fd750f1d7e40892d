//! Reference curves from the regret analysis. The leading constants of the
//! regret bounds are not known, so they are exposed as `constant_scale` and
//! the curves are only meaningful as shapes.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundParams {
    pub horizon: usize,
    pub dim: usize,
    pub num_arms: usize,
    pub s0: usize,
    pub num_batches: usize,
    /// Density constant of the restricted-density condition on contexts.
    pub gamma: f64,
    pub constant_scale: f64,
}

impl BoundParams {
    pub fn new(horizon: usize, dim: usize, num_arms: usize, s0: usize, num_batches: usize) -> Self {
        Self {
            horizon,
            dim,
            num_arms,
            s0,
            num_batches,
            gamma: 1.0,
            constant_scale: 1.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let counts = [
            ("T", self.horizon),
            ("d", self.dim),
            ("K", self.num_arms),
            ("s0", self.s0),
            ("M", self.num_batches),
        ];
        if let Some((name, _)) = counts.iter().find(|(_, v)| *v == 0) {
            return Err(Error::InvalidArgument(format!("{name} must be positive")));
        }
        if !(self.gamma > 0.0) || !(self.constant_scale > 0.0) {
            return Err(Error::InvalidArgument("gamma and constant_scale must be positive".into()));
        }
        Ok(())
    }

    /// `(T/s0)^(1/(2(2^M - 1)))`, the price of having only `M` batches.
    pub fn batch_inflation(&self) -> f64 {
        let ratio = self.horizon as f64 / self.s0 as f64;
        ratio.powf(1.0 / (2.0 * ((self.num_batches as f64).exp2() - 1.0)))
    }
}

/// High-probability bound on `||θ̂_m - θ*||₂` after `t_m` rounds:
///
/// ```text
/// 5760 √2 γ² K² √(s0 M) √( log K (2 log T + log d) / t_m )
/// ```
///
/// With `sqrt2_factor = false` the leading `√2` is dropped.
pub fn lasso_error_bound(params: &BoundParams, t_m: usize, sqrt2_factor: bool) -> f64 {
    let k = params.num_arms as f64;
    let lead = if sqrt2_factor { 5760.0 * 2f64.sqrt() } else { 5760.0 };
    let logs = k.ln() * (2.0 * (params.horizon as f64).ln() + (params.dim as f64).ln());
    lead * params.gamma.powi(2)
        * k.powi(2)
        * ((params.s0 * params.num_batches) as f64).sqrt()
        * (logs / t_m as f64).sqrt()
}

/// `C γ² K² M^{3/2} √(log K log(KT) log(dT)) √(T s0) (T/s0)^{1/(2(2^M-1))}`.
pub fn regret_upper_curve(params: &BoundParams) -> f64 {
    let t = params.horizon as f64;
    let k = params.num_arms as f64;
    let d = params.dim as f64;
    let m = params.num_batches as f64;
    params.constant_scale
        * params.gamma.powi(2)
        * k.powi(2)
        * m.powf(1.5)
        * (k.ln() * (k * t).ln() * (d * t).ln()).sqrt()
        * (t * params.s0 as f64).sqrt()
        * params.batch_inflation()
}

/// `c max( M^{-2} √(T s0) (T/s0)^{1/(2(2^M-1))}, √(T s0) )`.
pub fn regret_lower_curve(params: &BoundParams) -> f64 {
    let root = (params.horizon as f64 * params.s0 as f64).sqrt();
    let m = params.num_batches as f64;
    let batch_term = root * params.batch_inflation() / (m * m);
    params.constant_scale * batch_term.max(root)
}

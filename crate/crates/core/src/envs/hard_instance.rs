//! Two-arm lower-bound instances.
//!
//! Stage `m` of an `M`-stage schedule pairs a horizon checkpoint
//!
//! ```text
//! T_m = floor( s0 * (T/s0)^((1 - 2^-m) / (1 - 2^-M)) )
//! ```
//!
//! with a signal radius
//!
//! ```text
//! Δ_m = (1/(140 M)) * (T/s0)^( -(1 - 2^(1-m)) / (2 (1 - 2^-M)) )
//! ```
//!
//! and the stage-`m` instance draws θ* uniformly from the radius-`Δ_m` sphere
//! on the first `s0` coordinates.

use nalgebra::DVector;

use super::{sample_uniform_sphere, BanditInstance, LinearGaussianEnv};
use crate::error::{Error, Result};
use crate::seed::{stream_rng, Stream};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Stage {
    pub checkpoint: usize,
    pub delta: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HardInstanceSchedule {
    pub horizon: usize,
    pub s0: usize,
    pub stages: Vec<Stage>,
}

impl HardInstanceSchedule {
    pub fn num_stages(&self) -> usize {
        self.stages.len()
    }

    /// Stage `m` (1-based).
    pub fn stage(&self, m: usize) -> Result<Stage> {
        if m == 0 || m > self.stages.len() {
            return Err(Error::OutOfRange {
                what: "stage",
                value: m,
                lo: 1,
                hi: self.stages.len(),
            });
        }
        Ok(self.stages[m - 1])
    }
}

/// Evaluates the checkpoint and radius formulas for `m = 1..=M`.
///
/// The exponents at `m = M` (checkpoint) and `m = 1` (radius) are exactly 1
/// and 0, so `T_M = T` and `Δ_1 = 1/(140 M)` are returned exactly rather than
/// through a power that might round. Errors if flooring makes the checkpoints
/// collide (only possible when `T/s0` is close to 1).
pub fn hard_instance_schedule(horizon: usize, s0: usize, num_stages: usize) -> Result<HardInstanceSchedule> {
    if num_stages == 0 {
        return Err(Error::InvalidArgument("need M >= 1 stages".into()));
    }
    if s0 == 0 || s0 > horizon {
        return Err(Error::InvalidArgument(format!(
            "need 1 <= s0 <= T, got s0 = {s0}, T = {horizon}"
        )));
    }
    let big_m = num_stages as f64;
    let ratio = horizon as f64 / s0 as f64;
    let denom = 1.0 - (-big_m).exp2();
    let stages: Vec<Stage> = (1..=num_stages)
        .map(|m| {
            let mf = m as f64;
            let checkpoint = if m == num_stages {
                horizon
            } else {
                let exponent = (1.0 - (-mf).exp2()) / denom;
                (s0 as f64 * ratio.powf(exponent)).floor() as usize
            };
            let delta = if m == 1 {
                1.0 / (140.0 * big_m)
            } else {
                let exponent = -(1.0 - (1.0 - mf).exp2()) / (2.0 * denom);
                ratio.powf(exponent) / (140.0 * big_m)
            };
            Stage { checkpoint, delta }
        })
        .collect();
    if let Some(w) = stages.windows(2).find(|w| w[1].checkpoint <= w[0].checkpoint) {
        return Err(Error::InvalidArgument(format!(
            "degenerate schedule for T = {horizon}, s0 = {s0}, M = {num_stages}: checkpoints {} and {} collide",
            w[0].checkpoint, w[1].checkpoint
        )));
    }
    Ok(HardInstanceSchedule {
        horizon,
        s0,
        stages,
    })
}

/// Stage-`m` instance (1-based) of the `M`-stage two-arm construction: θ* on
/// the first `s0` coordinates with `||θ*||₂ = Δ_m`, unit-variance noise.
pub fn make_hard_instance_env(
    horizon: usize,
    dim: usize,
    s0: usize,
    num_stages: usize,
    stage: usize,
    seed: u64,
) -> Result<LinearGaussianEnv> {
    if s0 > dim {
        return Err(Error::InvalidArgument(format!("s0 = {s0} exceeds d = {dim}")));
    }
    let schedule = hard_instance_schedule(horizon, s0, num_stages)?;
    let Stage { delta, .. } = schedule.stage(stage)?;
    let mut rng = stream_rng(seed, stage as u64, Stream::Parameter);
    let block = sample_uniform_sphere(s0, delta, &mut rng)?;
    let mut theta = DVector::zeros(dim);
    theta.rows_mut(0, s0).copy_from_slice(&block);
    let instance = BanditInstance::new(horizon, 2, theta, 1.0)?;
    Ok(LinearGaussianEnv::new(instance, seed))
}

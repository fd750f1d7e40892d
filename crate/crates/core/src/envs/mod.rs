//! Bandit environments.
//!
//! Time is 1-based (`1..=T`) throughout; arms are 0-based indices into the
//! per-round context list.

mod classification;
mod hard_instance;
mod linear;
mod sphere;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

pub use classification::{make_classification_env_from_csv, ClassificationEnv, CsvEnvOptions};
pub use hard_instance::{hard_instance_schedule, make_hard_instance_env, HardInstanceSchedule};
pub use linear::{make_gaussian_env, BanditInstance, GaussianEnvConfig, LinearGaussianEnv};
pub use sphere::sample_uniform_sphere;

/// Contexts for one round, one `d`-vector per arm.
#[derive(Debug, Clone, PartialEq)]
pub struct RoundContexts {
    pub t: usize,
    pub arms: Vec<DVector<f64>>,
}

impl RoundContexts {
    pub fn num_arms(&self) -> usize {
        self.arms.len()
    }

    /// `K x d` matrix with one row per arm.
    pub fn to_matrix(&self) -> DMatrix<f64> {
        let k = self.arms.len();
        let d = self.arms.first().map_or(0, |x| x.len());
        DMatrix::from_fn(k, d, |a, j| self.arms[a][j])
    }
}

/// Everything a simulation needs from one round: the contexts, every arm's
/// mean reward and every arm's realized reward.
#[derive(Debug, Clone)]
pub struct Round {
    pub contexts: RoundContexts,
    pub means: Vec<f64>,
    pub realized: Vec<f64>,
}

impl Round {
    pub fn best_mean(&self) -> f64 {
        self.means.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Instantaneous regret of pulling `arm`: best mean minus the pulled mean.
    pub fn regret(&self, arm: usize) -> Result<f64> {
        let mean = self.means.get(arm).ok_or(Error::OutOfRange {
            what: "arm",
            value: arm,
            lo: 0,
            hi: self.means.len().saturating_sub(1),
        })?;
        Ok(self.best_mean() - mean)
    }
}

pub trait Environment: Send + Sync {
    fn horizon(&self) -> usize;
    fn dim(&self) -> usize;
    fn num_arms(&self) -> usize;

    /// Contexts at round `t`. A pure function of the environment and `t`.
    fn draw_round(&self, t: usize) -> Result<RoundContexts>;

    fn observe(&self, t: usize) -> Result<Round>;

    /// The true parameter, for environments with a linear reward model.
    fn theta_star(&self) -> Option<&DVector<f64>> {
        None
    }

    /// Gap between the correct and incorrect rewards, for classification
    /// environments.
    fn reward_gap(&self) -> Option<f64> {
        None
    }

    fn mean_reward(&self, t: usize, arm: usize) -> Result<f64> {
        let round = self.observe(t)?;
        check_arm(arm, self.num_arms())?;
        Ok(round.means[arm])
    }

    fn realized_reward(&self, t: usize, arm: usize) -> Result<f64> {
        let round = self.observe(t)?;
        check_arm(arm, self.num_arms())?;
        Ok(round.realized[arm])
    }
}

pub(crate) fn check_round(t: usize, horizon: usize) -> Result<()> {
    if t == 0 || t > horizon {
        return Err(Error::OutOfRange {
            what: "round",
            value: t,
            lo: 1,
            hi: horizon,
        });
    }
    Ok(())
}

pub(crate) fn check_arm(arm: usize, k: usize) -> Result<()> {
    if arm >= k {
        return Err(Error::OutOfRange {
            what: "arm",
            value: arm,
            lo: 0,
            hi: k.saturating_sub(1),
        });
    }
    Ok(())
}

/// Places `x` in block `arm` of a `K * d` vector, zeros elsewhere.
///
/// This is how a shared-feature, per-arm-parameter model is expressed with a
/// single shared parameter of dimension `K * d`.
pub fn embed_shared_to_per_arm(x: &DVector<f64>, arm: usize, k: usize) -> Result<DVector<f64>> {
    check_arm(arm, k)?;
    let d = x.len();
    let mut out = DVector::zeros(k * d);
    out.rows_mut(arm * d, d).copy_from(x);
    Ok(out)
}

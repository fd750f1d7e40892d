use nalgebra::DVector;
use rand::seq::index;
use rand::Rng;
use rand_distr::StandardNormal;

use super::{check_round, sample_uniform_sphere, Environment, Round, RoundContexts};
use crate::error::{Error, Result};
use crate::seed::{stream_rng, Stream};

/// Ground truth of a linear bandit: `r_{t,a} = x_{t,a}ᵀ θ* + ξ_t`.
#[derive(Debug, Clone, PartialEq)]
pub struct BanditInstance {
    pub horizon: usize,
    pub dim: usize,
    pub num_arms: usize,
    pub theta_star: DVector<f64>,
    pub noise_sigma: f64,
    pub support: Vec<usize>,
}

impl BanditInstance {
    pub fn new(horizon: usize, num_arms: usize, theta_star: DVector<f64>, noise_sigma: f64) -> Result<Self> {
        if horizon == 0 {
            return Err(Error::InvalidArgument("horizon must be >= 1".into()));
        }
        if num_arms < 2 {
            return Err(Error::InvalidArgument(format!("need K >= 2 arms, got {num_arms}")));
        }
        if theta_star.is_empty() {
            return Err(Error::InvalidArgument("dimension must be >= 1".into()));
        }
        if theta_star.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("theta_star"));
        }
        if theta_star.norm() > 1.0 + 1e-12 {
            return Err(Error::InvalidArgument(format!(
                "||theta*||_2 = {} exceeds 1",
                theta_star.norm()
            )));
        }
        if !(noise_sigma >= 0.0) || !noise_sigma.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "noise sigma must be finite and >= 0, got {noise_sigma}"
            )));
        }
        let support = theta_star
            .iter()
            .enumerate()
            .filter(|(_, v)| **v != 0.0)
            .map(|(j, _)| j)
            .collect();
        Ok(Self {
            horizon,
            dim: theta_star.len(),
            num_arms,
            theta_star,
            noise_sigma,
            support,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GaussianEnvConfig {
    pub horizon: usize,
    pub dim: usize,
    pub num_arms: usize,
    pub s0_true: usize,
    pub noise_sigma: f64,
    /// Radius of the sphere the nonzero block of θ* is drawn from, capped at 1.
    pub radius: f64,
}

impl GaussianEnvConfig {
    pub fn new(horizon: usize, dim: usize, num_arms: usize, s0_true: usize, noise_sigma: f64) -> Self {
        Self {
            horizon,
            dim,
            num_arms,
            s0_true,
            noise_sigma,
            radius: 1.0,
        }
    }
}

/// i.i.d. `N(0, I_d)` contexts per arm, linear mean reward and one Gaussian
/// noise draw per round shared by all arms.
///
/// Contexts and noise for round `t` come from their own ChaCha streams keyed
/// by `(seed, t)`, so rounds can be drawn in any order and repeated.
#[derive(Debug, Clone)]
pub struct LinearGaussianEnv {
    instance: BanditInstance,
    seed: u64,
}

impl LinearGaussianEnv {
    pub fn new(instance: BanditInstance, seed: u64) -> Self {
        Self { instance, seed }
    }

    pub fn with_theta(
        theta_star: DVector<f64>,
        num_arms: usize,
        horizon: usize,
        noise_sigma: f64,
        seed: u64,
    ) -> Result<Self> {
        Ok(Self::new(
            BanditInstance::new(horizon, num_arms, theta_star, noise_sigma)?,
            seed,
        ))
    }

    pub fn instance(&self) -> &BanditInstance {
        &self.instance
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    fn noise(&self, t: usize) -> f64 {
        if self.instance.noise_sigma == 0.0 {
            return 0.0;
        }
        let z: f64 = stream_rng(self.seed, t as u64, Stream::Noise).sample(StandardNormal);
        self.instance.noise_sigma * z
    }
}

pub fn make_gaussian_env(config: &GaussianEnvConfig, seed: u64) -> Result<LinearGaussianEnv> {
    let GaussianEnvConfig {
        horizon,
        dim,
        num_arms,
        s0_true,
        noise_sigma,
        radius,
    } = *config;
    if dim == 0 {
        return Err(Error::InvalidArgument("dimension must be >= 1".into()));
    }
    if s0_true > dim {
        return Err(Error::InvalidArgument(format!(
            "s0_true = {s0_true} exceeds d = {dim}"
        )));
    }
    let mut theta = DVector::zeros(dim);
    if s0_true > 0 {
        let mut rng = stream_rng(seed, 0, Stream::Parameter);
        let mut support = index::sample(&mut rng, dim, s0_true).into_vec();
        support.sort_unstable();
        let values = sample_uniform_sphere(s0_true, radius.min(1.0), &mut rng)?;
        for (j, v) in support.into_iter().zip(values) {
            theta[j] = v;
        }
    }
    Ok(LinearGaussianEnv::new(
        BanditInstance::new(horizon, num_arms, theta, noise_sigma)?,
        seed,
    ))
}

impl Environment for LinearGaussianEnv {
    fn horizon(&self) -> usize {
        self.instance.horizon
    }

    fn dim(&self) -> usize {
        self.instance.dim
    }

    fn num_arms(&self) -> usize {
        self.instance.num_arms
    }

    fn draw_round(&self, t: usize) -> Result<RoundContexts> {
        check_round(t, self.instance.horizon)?;
        let mut rng = stream_rng(self.seed, t as u64, Stream::Contexts);
        let d = self.instance.dim;
        let arms = (0..self.instance.num_arms)
            .map(|_| DVector::from_fn(d, |_, _| rng.sample(StandardNormal)))
            .collect();
        Ok(RoundContexts { t, arms })
    }

    fn observe(&self, t: usize) -> Result<Round> {
        let contexts = self.draw_round(t)?;
        let means: Vec<f64> = contexts
            .arms
            .iter()
            .map(|x| x.dot(&self.instance.theta_star))
            .collect();
        let xi = self.noise(t);
        let realized = means.iter().map(|m| m + xi).collect();
        Ok(Round {
            contexts,
            means,
            realized,
        })
    }

    fn theta_star(&self) -> Option<&DVector<f64>> {
        Some(&self.instance.theta_star)
    }
}

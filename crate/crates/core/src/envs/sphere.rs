use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

/// Uniform draw from the sphere of the given radius in `R^s0`: normalize a
/// standard Gaussian vector and scale it.
pub fn sample_uniform_sphere<R: Rng + ?Sized>(s0: usize, radius: f64, rng: &mut R) -> Result<Vec<f64>> {
    if s0 == 0 {
        return Err(Error::InvalidArgument("sphere dimension must be >= 1".into()));
    }
    if !(radius > 0.0) || !radius.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "sphere radius must be finite and > 0, got {radius}"
        )));
    }
    loop {
        let mut v: Vec<f64> = (0..s0).map(|_| rng.sample(StandardNormal)).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let scale = radius / norm;
        v.iter_mut().for_each(|x| *x *= scale);
        return Ok(v);
    }
}

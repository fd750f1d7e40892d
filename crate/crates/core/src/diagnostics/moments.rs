//! Moments of one coordinate of a uniform draw from the radius-`Δ` sphere in
//! `R^{s0}`:
//!
//! ```text
//! E|θ₁|   = 2Δ  Γ(s0/2 + 1) / (√π s0 Γ((s0+1)/2))
//! E|θ₁|²  = Δ² / s0
//! E|θ₁|³  = 4Δ³ Γ(s0/2 + 1) / (√π s0 (s0+1) Γ((s0+1)/2))
//! E|θ₁|⁴  = 3Δ⁴ / (s0 (s0+2))
//! ```

use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};

/// Largest `s0` for which the Gamma ratio is built by exact recurrence.
const RECURRENCE_LIMIT: usize = 40;

/// `Γ(s0/2 + 1) / Γ((s0+1)/2)` by the recurrence `R(s+2) = (s+2)/(s+1) R(s)`
/// from `R(1) = √π/2` and `R(2) = 2/√π`.
pub fn gamma_ratio_recurrence(s0: usize) -> f64 {
    let sqrt_pi = std::f64::consts::PI.sqrt();
    let (mut s, mut r) = if s0 % 2 == 1 { (1, sqrt_pi / 2.0) } else { (2, 2.0 / sqrt_pi) };
    while s < s0 {
        r *= (s + 2) as f64 / (s + 1) as f64;
        s += 2;
    }
    r
}

/// `Γ(s0/2 + 1) / Γ((s0+1)/2)` through log-Gamma.
pub fn gamma_ratio_lgamma(s0: usize) -> f64 {
    let s = s0 as f64;
    (ln_gamma(s / 2.0 + 1.0) - ln_gamma((s + 1.0) / 2.0)).exp()
}

fn gamma_ratio(s0: usize) -> f64 {
    if s0 <= RECURRENCE_LIMIT {
        gamma_ratio_recurrence(s0)
    } else {
        gamma_ratio_lgamma(s0)
    }
}

pub fn sphere_moment(s0: usize, delta: f64, p: u32) -> Result<f64> {
    if s0 == 0 {
        return Err(Error::InvalidArgument("s0 must be >= 1".into()));
    }
    if !(delta > 0.0) || !delta.is_finite() {
        return Err(Error::InvalidArgument(format!("delta must be finite and > 0, got {delta}")));
    }
    let s = s0 as f64;
    let sqrt_pi = std::f64::consts::PI.sqrt();
    match p {
        1 => Ok(2.0 * delta * gamma_ratio(s0) / (sqrt_pi * s)),
        2 => Ok(delta * delta / s),
        3 => Ok(4.0 * delta.powi(3) * gamma_ratio(s0) / (sqrt_pi * s * (s + 1.0))),
        4 => Ok(3.0 * delta.powi(4) / (s * (s + 2.0))),
        _ => Err(Error::InvalidArgument(format!("moment order must be 1..=4, got {p}"))),
    }
}

/// `(2Δ/(5√s0), 2Δ/√s0)`, which bracket `E|θ₁|`.
pub fn sphere_moment_bounds(s0: usize, delta: f64) -> (f64, f64) {
    let root = (s0 as f64).sqrt();
    (2.0 * delta / (5.0 * root), 2.0 * delta / root)
}

//! Restricted eigenvalues of empirical covariance matrices.
//!
//! `φ_min(s, A)` and `φ_max(s, A)` are the extreme Rayleigh quotients of `A`
//! over vectors with at most `s` nonzeros. By eigenvalue interlacing it is
//! enough to look at supports of size exactly `s`, where they reduce to the
//! extreme eigenvalues of `s x s` principal submatrices.

use std::ops::Range;

use itertools::Itertools;
use nalgebra::{DMatrix, DVector};
use rand::seq::index;

use crate::error::{Error, Result};
use crate::seed::{stream_rng, Stream};

pub const MAX_EXACT_DIM: usize = 20;
pub const MAX_EXACT_SUPPORTS: u128 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EigMode {
    /// Enumerate every support of size `s`.
    Exact,
    /// Check `supports` random supports. The result brackets the truth from
    /// inside: `phi_min` is an upper bound on `φ_min` and `phi_max` a lower
    /// bound on `φ_max`.
    Sampled { supports: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct RestrictedEigResult {
    pub s: usize,
    pub phi_min: f64,
    pub phi_max: f64,
    pub argmin_support: Vec<usize>,
    pub argmax_support: Vec<usize>,
    /// True when computed from sampled supports.
    pub approximate: bool,
    pub supports_checked: usize,
}

/// `(1/n) Σ x xᵀ` over the given vectors.
pub fn empirical_covariance(vectors: &[DVector<f64>]) -> Result<DMatrix<f64>> {
    let first = vectors
        .first()
        .ok_or_else(|| Error::InvalidArgument("empirical covariance of an empty list".into()))?;
    let d = first.len();
    let mut cov = DMatrix::zeros(d, d);
    for x in vectors {
        if x.len() != d {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} among length-{d} vectors",
                x.len()
            )));
        }
        cov.ger(1.0, x, x, 1.0);
    }
    Ok(cov / vectors.len() as f64)
}

/// Normalized covariance of the pulled contexts over a range of 1-based
/// rounds, e.g. one interval of the sample-splitting partition.
pub fn interval_covariance(history: &[DVector<f64>], rounds: Range<usize>) -> Result<DMatrix<f64>> {
    if rounds.start == 0 || rounds.end > history.len() + 1 {
        return Err(Error::InvalidArgument(format!(
            "rounds {rounds:?} outside 1..={}",
            history.len()
        )));
    }
    empirical_covariance(&history[rounds.start - 1..rounds.end - 1])
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn check_symmetric(a: &DMatrix<f64>) -> Result<()> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "matrix is {}x{}, expected square",
            a.nrows(),
            a.ncols()
        )));
    }
    if a.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("matrix"));
    }
    let scale = a.amax().max(1.0);
    let asym = (a - a.transpose()).amax();
    if asym > 1e-12 * scale {
        return Err(Error::NotSymmetric(asym));
    }
    Ok(())
}

fn submatrix_extremes(a: &DMatrix<f64>, support: &[usize]) -> (f64, f64) {
    if support.len() == 1 {
        let v = a[(support[0], support[0])];
        return (v, v);
    }
    let sub = a.select_rows(support).select_columns(support);
    let eig = sub.symmetric_eigenvalues();
    (eig.min(), eig.max())
}

pub fn restricted_eigs(a: &DMatrix<f64>, s: usize, mode: EigMode) -> Result<RestrictedEigResult> {
    check_symmetric(a)?;
    let d = a.nrows();
    if s == 0 {
        return Err(Error::InvalidArgument("sparsity level must be >= 1".into()));
    }
    let s = s.min(d);

    let mut result = RestrictedEigResult {
        s,
        phi_min: f64::INFINITY,
        phi_max: f64::NEG_INFINITY,
        argmin_support: Vec::new(),
        argmax_support: Vec::new(),
        approximate: false,
        supports_checked: 0,
    };
    let mut visit = |support: Vec<usize>| {
        let (lo, hi) = submatrix_extremes(a, &support);
        // strict comparisons keep the lexicographically first support on ties
        if lo < result.phi_min {
            result.phi_min = lo;
            result.argmin_support = support.clone();
        }
        if hi > result.phi_max {
            result.phi_max = hi;
            result.argmax_support = support;
        }
        result.supports_checked += 1;
    };

    match mode {
        EigMode::Exact => {
            let count = binomial(d, s);
            if d > MAX_EXACT_DIM {
                return Err(Error::InvalidArgument(format!(
                    "exact restricted eigenvalues need d <= {MAX_EXACT_DIM}, got {d} (use sampled mode)"
                )));
            }
            if count > MAX_EXACT_SUPPORTS {
                return Err(Error::EnumerationBudget {
                    supports: count,
                    budget: MAX_EXACT_SUPPORTS,
                });
            }
            for support in (0..d).combinations(s) {
                visit(support);
            }
        }
        EigMode::Sampled { supports, seed } => {
            if supports == 0 {
                return Err(Error::InvalidArgument("sampled mode needs >= 1 support".into()));
            }
            let mut rng = stream_rng(seed, s as u64, Stream::Policy);
            for _ in 0..supports {
                let mut support = index::sample(&mut rng, d, s).into_vec();
                support.sort_unstable();
                visit(support);
            }
            result.approximate = true;
        }
    }
    Ok(result)
}

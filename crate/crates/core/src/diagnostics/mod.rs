//! Computable versions of the quantities the regret analysis is built on.

mod bounds;
mod moments;
mod restricted;

pub use bounds::{lasso_error_bound, regret_lower_curve, regret_upper_curve, BoundParams};
pub use moments::{gamma_ratio_lgamma, gamma_ratio_recurrence, sphere_moment, sphere_moment_bounds};
pub use restricted::{
    binomial, empirical_covariance, interval_covariance, restricted_eigs, EigMode,
    RestrictedEigResult, MAX_EXACT_DIM, MAX_EXACT_SUPPORTS,
};

//! LASSO batch greedy learning (LBGL) for sparse linear contextual bandits
//! with a limited number of policy updates.
//!
//! The crate is organized around the pieces of an experiment:
//!
//! - [`lasso`]: coordinate-descent LASSO and ridge solvers.
//! - [`envs`]: Gaussian linear bandits, the staged hard instance, and
//!   classification data served as a bandit.
//! - [`policies`]: the batch grid, LBGL, its online variant, and baselines.
//! - [`diagnostics`]: restricted eigenvalues, sphere moments, bound curves.
//! - [`harness`]: JSON experiment configs, parallel replications, the CLI.
//!
//! Rounds are numbered from 1 and arms from 0. Runnable walkthroughs live in
//! `examples/`:
//!
//! | example | shows |
//! |---|---|
//! | `lasso_fit` | solving a LASSO problem and checking optimality |
//! | `grid` | batch boundaries and the interval partition |
//! | `gaussian_lbgl` | one LBGL run on a synthetic sparse instance |
//! | `online_vs_batch` | regret of batched, online and baseline policies |
//! | `hard_instance` | the staged lower-bound construction |
//! | `restricted_eigs` | restricted eigenvalues of pulled contexts |
//! | `sphere_moments` | closed-form sphere moments against sampling |
//! | `csv_classification` | a labelled CSV file as a bandit |
//! | `experiment` | a config-driven experiment with output files |

// `!(x > 0.0)` is used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod diagnostics;
pub mod envs;
pub mod error;
pub mod harness;
pub mod lasso;
pub mod policies;
pub mod seed;
pub mod trace;

pub use error::{Error, Result};
pub use trace::RegretTrace;

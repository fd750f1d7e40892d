//! Restricted eigenvalues of the contexts LBGL actually pulled, one interval
//! of the splitting partition at a time.

use batchbandit::diagnostics::{interval_covariance, restricted_eigs, EigMode};
use batchbandit::envs::{make_gaussian_env, GaussianEnvConfig};
use batchbandit::policies::{assign_intervals, run_lbgl, LbglConfig};

fn main() -> batchbandit::Result<()> {
    let s0 = 3;
    let env = make_gaussian_env(&GaussianEnvConfig::new(3000, 16, 2, s0, 0.5), 5)?;
    let mut config = LbglConfig::new(3, s0);
    config.lasso.lambda_scale = 0.1;
    config.record_history = true;
    let run = run_lbgl(&env, &config)?;
    let history = run.history.as_deref().unwrap();
    let partition = assign_intervals(&run.grid);

    for m in 1..=run.grid.num_batches() {
        for (j, rounds) in partition.batch_intervals(m).into_iter().enumerate() {
            if rounds.is_empty() {
                continue;
            }
            let cov = interval_covariance(history, rounds.clone())?;
            let r = restricted_eigs(&cov, s0, EigMode::Exact)?;
            println!(
                "batch {m} interval {} rounds {rounds:?}: phi_min={:.3} phi_max={:.3} over {} supports",
                j + 1,
                r.phi_min,
                r.phi_max,
                r.supports_checked
            );
        }
    }
    Ok(())
}

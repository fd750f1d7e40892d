//! One LBGL run on a sparse Gaussian bandit, with the per-batch fits.

use batchbandit::envs::{make_gaussian_env, Environment, GaussianEnvConfig};
use batchbandit::policies::{run_lbgl, LbglConfig};

fn main() -> batchbandit::Result<()> {
    let env = make_gaussian_env(&GaussianEnvConfig::new(4000, 300, 2, 8, 0.5), 42)?;
    let mut config = LbglConfig::new(3, 8);
    config.lasso.lambda_scale = 0.1;
    let run = run_lbgl(&env, &config)?;

    println!("grid {:?}", run.grid.boundaries());
    for fit in &run.fits {
        println!(
            "batch {} (ends t={}): fit on {} rounds, lambda={:.4}, {} sweeps, {} nonzeros",
            fit.batch, fit.end, fit.fit_size, fit.lambda, fit.sweeps, fit.nonzeros
        );
    }
    let truth = env.theta_star().unwrap();
    for (m, est) in run.estimates.iter().enumerate() {
        println!("error of estimate used in batch {}: {:.4}", m + 1, (est - truth).norm());
    }
    println!("final error {:.4}", (&run.final_estimate - truth).norm());
    println!("cumulative regret {:.2} over {} rounds", run.trace.total(), run.trace.len());
    for w in &run.warnings {
        println!("warning: {w}");
    }
    Ok(())
}

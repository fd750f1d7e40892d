//! Fit a LASSO on a synthetic sparse regression and check the optimality
//! conditions of the result.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use batchbandit::lasso::{fit_lasso_traced, kkt_violation, RegressionProblem, DEFAULT_MAX_SWEEPS, DEFAULT_TOLERANCE};

fn main() -> batchbandit::Result<()> {
    let (n, d) = (200, 50);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let x = DMatrix::from_fn(n, d, |_, _| rng.sample::<f64, _>(StandardNormal));
    let mut truth = DVector::zeros(d);
    truth[3] = 1.5;
    truth[17] = -2.0;
    truth[40] = 0.7;
    let noise = DVector::from_fn(n, |_, _| 0.3 * rng.sample::<f64, _>(StandardNormal));
    let y = &x * &truth + noise;

    for lambda in [0.5, 0.1, 0.02] {
        let problem = RegressionProblem::new(x.clone(), y.clone(), lambda)?;
        let (fit, history) = fit_lasso_traced(&problem, DEFAULT_TOLERANCE, DEFAULT_MAX_SWEEPS)?;
        let support: Vec<usize> = (0..d).filter(|&j| fit.coefficients[j] != 0.0).collect();
        println!(
            "lambda={lambda:<5} sweeps={:<3} objective {:.5} -> {:.5}  kkt={:.1e}  support={support:?}",
            fit.sweeps,
            history[0],
            fit.objective,
            kkt_violation(&problem, &fit.coefficients)?,
        );
    }
    Ok(())
}

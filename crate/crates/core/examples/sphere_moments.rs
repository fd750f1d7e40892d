//! Closed-form moments of one coordinate of a uniform sphere draw, next to
//! a Monte Carlo estimate and the bracketing bounds on the first moment.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use batchbandit::diagnostics::{sphere_moment, sphere_moment_bounds};
use batchbandit::envs::sample_uniform_sphere;

fn main() -> batchbandit::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let draws = 200_000;
    for s0 in [2, 10, 50] {
        let mut sums = [0.0; 4];
        for _ in 0..draws {
            let v = sample_uniform_sphere(s0, 1.0, &mut rng)?[0].abs();
            for (p, sum) in sums.iter_mut().enumerate() {
                *sum += v.powi(p as i32 + 1);
            }
        }
        for p in 1..=4 {
            println!(
                "s0={s0:<3} p={p}: exact {:.6}  sampled {:.6}",
                sphere_moment(s0, 1.0, p)?,
                sums[p as usize - 1] / draws as f64
            );
        }
        let (lo, hi) = sphere_moment_bounds(s0, 1.0);
        println!("        first moment bounds [{lo:.4}, {hi:.4}]");
    }
    Ok(())
}

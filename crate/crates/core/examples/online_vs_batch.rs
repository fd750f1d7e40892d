//! Batched LBGL against its online variant and the baselines, all on the
//! same environment draws.

use batchbandit::harness::{run_experiment, Batches, ExperimentConfig, PolicyKind};

fn main() -> batchbandit::Result<()> {
    let base = {
        let mut c = ExperimentConfig::gaussian(2000, 200, 5, Batches::Count(2));
        c.replications = 5;
        c.seed = 1;
        c
    };
    let runs = [
        ("LBGL M=2", PolicyKind::Lbgl, Batches::Count(2), 0.1),
        ("LBGL M=3", PolicyKind::Lbgl, Batches::Count(3), 0.1),
        ("LBGL online", PolicyKind::Lbgl, Batches::Online, 0.5),
        ("ridge greedy M=3", PolicyKind::RidgeGreedy, Batches::Count(3), 1.0),
        ("random", PolicyKind::Random, Batches::Count(1), 1.0),
        ("oracle", PolicyKind::Oracle, Batches::Count(1), 1.0),
    ];
    for (name, policy, batches, scale) in runs {
        let mut c = base.clone();
        c.policy = policy;
        c.batches = batches;
        c.lambda_scale = scale;
        let s = run_experiment(&c)?.summary;
        let last = s.mean_cum.len() - 1;
        println!(
            "{name:<18} regret {:>8.2} +/- {:<6.2} ({:.2}s)",
            s.mean_cum[last], s.ci_half[last], s.wall_seconds
        );
    }
    Ok(())
}

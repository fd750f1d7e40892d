//! The staged two-arm instances used for the lower bound: checkpoints,
//! radii, and how a fixed M-batch LBGL fares on each stage.

use batchbandit::envs::{hard_instance_schedule, make_hard_instance_env};
use batchbandit::policies::{run_lbgl, LbglConfig};

fn main() -> batchbandit::Result<()> {
    let (t, d, s0, m) = (20_000, 40, 4, 3);
    let schedule = hard_instance_schedule(t, s0, m)?;
    for (i, stage) in schedule.stages.iter().enumerate() {
        println!("stage {}: T_m={:<6} delta={:.3e}", i + 1, stage.checkpoint, stage.delta);
    }

    let mut config = LbglConfig::new(m, s0);
    config.lasso.lambda_scale = 0.1;
    for stage in 1..=m {
        let env = make_hard_instance_env(t, d, s0, m, stage, 3)?;
        let run = run_lbgl(&env, &config)?;
        println!("stage {stage} instance: LBGL regret {:.3}", run.trace.total());
    }
    Ok(())
}

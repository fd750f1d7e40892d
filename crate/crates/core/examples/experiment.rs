//! A config-driven experiment that writes per-replication traces and a
//! summary, the same path the `batchbandit run` command takes.
//!
//! ```text
//! cargo run --release --example experiment -- [output-dir]
//! ```

use batchbandit::harness::{run_experiment, ExperimentConfig, ExperimentSummary};

const CONFIG: &str = r#"{
    "t": 3000, "d": 500, "k": 2, "s0_true": 10, "s0_bound": 10, "m": 3,
    "noise_sigma": 0.5, "lambda_scale": 0.1, "splitting": "pooled",
    "replications": 8, "seed": 2024
}"#;

fn main() -> batchbandit::Result<()> {
    let out = std::env::args()
        .nth(1)
        .map(Into::into)
        .unwrap_or_else(|| std::env::temp_dir().join("batchbandit-experiment"));
    let mut config = ExperimentConfig::from_json_str(CONFIG).expect("valid config");
    config.out = Some(out.clone());
    let result = run_experiment(&config)?;

    let summary = ExperimentSummary::load(&out.join("summary.json"))?;
    assert_eq!(summary.mean_cum, result.summary.mean_cum);
    for t in [100, 500, 1000, 2000, 3000] {
        println!(
            "t={t:<5} mean cumulative regret {:>7.2} +/- {:.2}",
            summary.mean_cum[t - 1],
            summary.ci_half[t - 1]
        );
    }
    println!("per-replication finals {:?}", summary.final_cum);
    println!("wrote {} trace files and summary.json to {}", config.replications, out.display());
    Ok(())
}

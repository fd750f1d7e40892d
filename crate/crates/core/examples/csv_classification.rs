//! A labelled CSV file served as a bandit: each label is an arm and a wrong
//! guess costs one unit of regret.

use std::io::Cursor;

use batchbandit::envs::{ClassificationEnv, CsvEnvOptions, Environment};
use batchbandit::policies::{run_baseline, run_lbgl, BaselineConfig, BaselineKind, LbglConfig};

fn main() -> batchbandit::Result<()> {
    let mut text = String::from("dose,weight,site,outcome\n");
    for i in 0..1500 {
        let dose = ((i * 37) % 100) as f64 / 10.0;
        let weight = 50.0 + ((i * 13) % 40) as f64;
        let site = ["north", "south", "east"][i % 3];
        let outcome = if dose * 8.0 > weight - 10.0 { "high" } else { "low" };
        text.push_str(&format!("{dose},{weight},{site},{outcome}\n"));
    }
    let mut options = CsvEnvOptions::new("outcome");
    options.shuffle = true;
    options.seed = 9;
    let env = ClassificationEnv::from_reader(Cursor::new(text), &options)?;
    println!(
        "{} rows, features {:?}, arms {:?}",
        env.horizon(),
        env.feature_names(),
        env.label_names()
    );

    let mut config = LbglConfig::new(3, 3);
    config.lasso.lambda_scale = 0.02;
    let lbgl = run_lbgl(&env, &config)?;
    let random = run_baseline(&env, &BaselineConfig::new(BaselineKind::Random))?;
    println!("mistakes: LBGL {:.0}, random {:.0}", lbgl.trace.total(), random.total());
    Ok(())
}

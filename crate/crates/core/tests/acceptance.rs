//! Acceptance suite. Runs without the libtest harness so that every
//! criterion prints exactly one PASS/FAIL line:
//!
//! ```text
//! cargo test --test acceptance
//! ```

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use nalgebra::DVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use batchbandit::diagnostics::{restricted_eigs, sphere_moment, sphere_moment_bounds, EigMode};
use batchbandit::envs::{hard_instance_schedule, sample_uniform_sphere};
use batchbandit::harness::{run_experiment, Batches, ExperimentConfig, PolicyKind};
use batchbandit::lasso::{fit_lasso, fit_lasso_traced, kkt_violation, soft_threshold, RegressionProblem};
use batchbandit::policies::{compute_grid, floored_recursion};

use common::{gaussian_matrix, jacobi_eigenvalues, proximal_gradient, random_problem, random_symmetric};

type Check = fn() -> (bool, String);

fn main() {
    let checks: [(&str, Check); 8] = [
        ("batch-vs-online comparability", comparability),
        ("sublinear scaling", scaling),
        ("lasso correctness", lasso_correctness),
        ("grid exactness", grid_exactness),
        ("sphere moments", sphere_moments),
        ("restricted eigenvalues", restricted_eigenvalues),
        ("hard-instance schedule", hard_instance),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (name, check) in checks {
        let started = Instant::now();
        let (pass, detail) = match catch_unwind(AssertUnwindSafe(check)) {
            Ok(outcome) => outcome,
            Err(panic) => {
                let msg = panic
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                (false, format!("panicked: {msg}"))
            }
        };
        if !pass {
            failed += 1;
        }
        println!(
            "{} {name}: {detail} [{:.1}s]",
            if pass { "PASS" } else { "FAIL" },
            started.elapsed().as_secs_f64()
        );
    }
    println!("acceptance: {} passed, {failed} failed", checks.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

fn mean_final(config: &ExperimentConfig) -> f64 {
    *run_experiment(config).unwrap().summary.mean_cum.last().unwrap()
}

fn comparability() -> (bool, String) {
    let mut batch = ExperimentConfig::gaussian(3000, 500, 10, Batches::Count(3));
    batch.noise_sigma = 0.5;
    batch.replications = 20;
    batch.seed = 2024;
    batch.threads = Some(1);
    batch.lambda_scale = 0.1;

    let mut online = batch.clone();
    online.batches = Batches::Online;
    online.lambda_scale = 0.5;

    let mut random = batch.clone();
    random.policy = PolicyKind::Random;

    let started = Instant::now();
    let b = mean_final(&batch);
    let o = mean_final(&online);
    let r = mean_final(&random);
    let secs = started.elapsed().as_secs_f64();
    let pass = b <= 1.5 * o && b <= 0.25 * r && secs <= 300.0;
    (
        pass,
        format!(
            "LBGL(M=3) {b:.1}, online {o:.1} (ratio {:.3} <= 1.5), random {r:.1} (ratio {:.3} <= 0.25), {secs:.1}s on one thread (<= 300s)",
            b / o,
            b / r
        ),
    )
}

fn scaling() -> (bool, String) {
    let horizons = [1000usize, 2000, 4000, 8000];
    let points: Vec<(f64, f64)> = horizons
        .iter()
        .map(|&t| {
            let mut c = ExperimentConfig::gaussian(t, 200, 5, Batches::Count(4));
            c.replications = 10;
            c.seed = 77;
            c.lambda_scale = 0.1;
            ((t as f64).ln(), mean_final(&c).ln())
        })
        .collect();
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let slope = sxy / sxx;
    let finals: Vec<String> = points.iter().map(|p| format!("{:.1}", p.1.exp())).collect();
    (
        (0.40..=0.80).contains(&slope),
        format!("slope {slope:.3} in [0.40, 0.80]; final regrets {}", finals.join(", ")),
    )
}

fn lasso_correctness() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(11);

    // orthonormal design: XᵀX/n = I, so θ_j = S(x_jᵀy/n, λ)
    let mut ortho_err = 0.0f64;
    for _ in 0..10 {
        let n = rng.random_range(20..60);
        let d = rng.random_range(2..n / 2);
        let q = gaussian_matrix(&mut rng, n, d).qr().q();
        let x = q * (n as f64).sqrt();
        let y = DVector::from_fn(n, |_, _| rng.random_range(-2.0..2.0));
        let z = x.transpose() * &y / n as f64;
        for lambda in [0.0, 0.05, 0.3, 1.0] {
            let p = RegressionProblem::new(x.clone(), y.clone(), lambda).unwrap();
            let fit = fit_lasso(&p, 1e-7, 10_000).unwrap();
            for j in 0..d {
                ortho_err = ortho_err.max((fit.coefficients[j] - soft_threshold(z[j], lambda)).abs());
            }
        }
    }

    let mut worst_kkt = 0.0f64;
    let mut monotone = true;
    let mut worst_prox = 0.0f64;
    let mut prox_cases = 0;
    for i in 0..100 {
        let (n, d) = if i % 2 == 0 {
            let d = rng.random_range(3..20);
            (rng.random_range(2 * d + 5..120), d)
        } else {
            let n = rng.random_range(10..40);
            (n, rng.random_range(n + 1..60))
        };
        let (x, y) = random_problem(&mut rng, n, d);
        let lambda_max = (x.transpose() * &y / n as f64).amax();
        let lambda = lambda_max * rng.random_range(0.01..0.9);
        let p = RegressionProblem::new(x.clone(), y.clone(), lambda).unwrap();
        let (fit, history) = fit_lasso_traced(&p, 1e-7, 10_000).unwrap();
        worst_kkt = worst_kkt.max(kkt_violation(&p, &fit.coefficients).unwrap());
        monotone &= history
            .windows(2)
            .all(|w| w[1] <= w[0] + 1e-12 * w[0].abs().max(1.0));
        if n >= 2 * d {
            let oracle = proximal_gradient(&x, &y, lambda);
            let diff = fit
                .coefficients
                .iter()
                .zip(&oracle)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            worst_prox = worst_prox.max(diff);
            prox_cases += 1;
        }
    }
    let pass = ortho_err <= 1e-8 && worst_kkt <= 1e-6 && monotone && worst_prox <= 1e-6;
    (
        pass,
        format!(
            "orthonormal max err {ortho_err:.1e} (<= 1e-8), max KKT {worst_kkt:.1e} (<= 1e-6) over 100, monotone {monotone}, proximal-gradient max diff {worst_prox:.1e} (<= 1e-6) over {prox_cases}"
        ),
    )
}

fn grid_exactness() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut bad = Vec::new();
    let mut done = 0;
    while done < 100 {
        let t: usize = rng.random_range(50..=100_000);
        let s0_max = ((t as f64).powf(0.8).floor() as usize).max(1);
        let s0 = rng.random_range(1..=s0_max);
        let m = rng.random_range(1..=8);
        if m > t {
            continue;
        }
        done += 1;
        let g = compute_grid(t, s0, m).unwrap();
        let b = g.boundaries();
        let ok = b.len() == m
            && b.windows(2).all(|w| w[0] < w[1])
            && b[m - 1] == t
            && floored_recursion(g.scale_b().unwrap(), s0, m) == g.raw_boundaries();
        if !ok {
            bad.push(format!("(T={t}, s0={s0}, M={m})"));
        }
    }
    (bad.is_empty(), format!("100 random grids, {} invalid {}", bad.len(), bad.join(" ")))
}

fn sphere_moments() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let samples = 1_000_000;
    let mut worst_z = 0.0f64;
    for s0 in [2usize, 10, 50] {
        let mut sums = [0.0f64; 4];
        let mut squares = [0.0f64; 4];
        for _ in 0..samples {
            let v = sample_uniform_sphere(s0, 1.0, &mut rng).unwrap()[0].abs();
            let mut power = 1.0;
            for p in 0..4 {
                power *= v;
                sums[p] += power;
                squares[p] += power * power;
            }
        }
        for p in 0..4 {
            let n = samples as f64;
            let mean = sums[p] / n;
            let var = (squares[p] - n * mean * mean) / (n - 1.0);
            let exact = sphere_moment(s0, 1.0, p as u32 + 1).unwrap();
            worst_z = worst_z.max((mean - exact).abs() / (var / n).sqrt());
        }
    }
    let sandwich = (1..=200).all(|s0| {
        let m = sphere_moment(s0, 1.3, 1).unwrap();
        let (lo, hi) = sphere_moment_bounds(s0, 1.3);
        lo <= m && m <= hi
    });
    let mut p2_err = 0.0f64;
    for s0 in [1usize, 2, 3, 10, 50, 1000, 1_000_000] {
        for delta in [0.1, 1.0, 7.5] {
            let got = sphere_moment(s0, delta, 2).unwrap();
            p2_err = p2_err.max((got - delta * delta / s0 as f64).abs());
        }
    }
    let pass = worst_z <= 4.0 && sandwich && p2_err <= 1e-12;
    (
        pass,
        format!(
            "max |z| {worst_z:.2} (<= 4) over 12 Monte Carlo checks of 1e6 draws, sandwich s0=1..200 {sandwich}, p=2 max err {p2_err:.1e}"
        ),
    )
}

fn restricted_eigenvalues() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let mut dense_err = 0.0f64;
    for _ in 0..20 {
        let a = random_symmetric(&mut rng, 8);
        let r = restricted_eigs(&a, 8, EigMode::Exact).unwrap();
        let eig = jacobi_eigenvalues(&a);
        dense_err = dense_err.max((r.phi_min - eig[0]).abs()).max((r.phi_max - eig[7]).abs());
    }

    let mut violations = 0;
    let mut monotone = true;
    let mut probes = 0;
    for _ in 0..10 {
        let a = random_symmetric(&mut rng, 8);
        let results: Vec<_> = (1..=8).map(|s| restricted_eigs(&a, s, EigMode::Exact).unwrap()).collect();
        monotone &= results
            .windows(2)
            .all(|w| w[1].phi_min <= w[0].phi_min + 1e-12 && w[1].phi_max >= w[0].phi_max - 1e-12);
        for _ in 0..1000 {
            let s = rng.random_range(1..=8);
            let support = rand::seq::index::sample(&mut rng, 8, s).into_vec();
            let mut v = DVector::zeros(8);
            for &j in &support {
                v[j] = rng.random_range(-1.0..1.0);
            }
            if v.norm() == 0.0 {
                continue;
            }
            let q = (v.transpose() * &a * &v)[(0, 0)] / v.norm_squared();
            let r = &results[s - 1];
            if q < r.phi_min - 1e-12 || q > r.phi_max + 1e-12 {
                violations += 1;
            }
            probes += 1;
        }
    }
    let pass = dense_err <= 1e-9 && violations == 0 && monotone;
    (
        pass,
        format!(
            "s=d vs Jacobi max err {dense_err:.1e} (<= 1e-9) on 20 matrices, {violations} sandwich violations in {probes} sparse probes, monotone in s {monotone}"
        ),
    )
}

fn hard_instance() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let mut bad = Vec::new();
    for _ in 0..50 {
        let t: usize = rng.random_range(1000..=1_000_000);
        let s0 = rng.random_range(1..=((t as f64).sqrt() as usize));
        let m = rng.random_range(1..=6);
        let sched = hard_instance_schedule(t, s0, m).unwrap();
        let st = &sched.stages;
        let ok = st[0].delta == 1.0 / (140.0 * m as f64)
            && st[m - 1].checkpoint == t
            && st.windows(2).all(|w| w[1].delta < w[0].delta && w[1].checkpoint > w[0].checkpoint);
        if !ok {
            bad.push(format!("(T={t}, s0={s0}, M={m})"));
        }
    }
    (bad.is_empty(), format!("50 random schedules, {} invalid {}", bad.len(), bad.join(" ")))
}

fn determinism() -> (bool, String) {
    let dirs = [tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap()];
    let mut config = ExperimentConfig::gaussian(600, 60, 4, Batches::Count(3));
    config.replications = 4;
    config.seed = 99;
    config.lambda_scale = 0.1;
    for (i, dir) in dirs.iter().enumerate() {
        config.out = Some(dir.path().to_owned());
        // different thread counts must not change the output
        config.threads = Some(if i == 0 { 1 } else { 4 });
        run_experiment(&config).unwrap();
    }
    let mut differing = Vec::new();
    for r in 0..config.replications {
        let name = format!("rep_{r}.csv");
        let a = std::fs::read(dirs[0].path().join(&name)).unwrap();
        let b = std::fs::read(dirs[1].path().join(&name)).unwrap();
        if a != b || a.is_empty() {
            differing.push(name);
        }
    }
    (
        differing.is_empty(),
        format!("{} trace files compared, {} differ {}", config.replications, differing.len(), differing.join(" ")),
    )
}

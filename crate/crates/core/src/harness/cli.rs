use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use nalgebra::DMatrix;

use super::config::ExperimentConfig;
use super::experiment::run_experiment;
use crate::diagnostics::{restricted_eigs, sphere_moment, EigMode};
use crate::error::{Error, Result};
use crate::policies::{compute_grid, SplittingMode};

/// Exit status for bad usage, unreadable input or an invalid config.
const USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "batchbandit", version, about = "Batched LASSO greedy bandits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run an experiment described by a JSON config.
    Run(RunArgs),
    /// Print the batch grid boundaries.
    Grid(GridArgs),
    /// Diagnostics on data.
    Diag {
        #[command(subcommand)]
        which: Diag,
    },
    /// Print E|θ₁|^p for θ uniform on the radius-delta sphere in R^s0.
    Moments(MomentsArgs),
}

#[derive(Args, Debug)]
struct RunArgs {
    config: PathBuf,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    mode: Option<SplittingMode>,
    #[arg(long = "lambda-scale")]
    lambda_scale: Option<f64>,
    #[arg(long)]
    replications: Option<usize>,
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args, Debug)]
struct GridArgs {
    #[arg(long = "T", alias = "horizon")]
    horizon: usize,
    #[arg(long)]
    s0: usize,
    #[arg(long = "M", alias = "batches")]
    batches: usize,
    /// Also print the scale b on a second line.
    #[arg(long)]
    verbose: bool,
}

#[derive(Subcommand, Debug)]
enum Diag {
    /// Restricted eigenvalues of a symmetric matrix given as CSV rows.
    Re(ReArgs),
}

#[derive(Args, Debug)]
struct ReArgs {
    #[arg(long)]
    matrix: PathBuf,
    #[arg(long)]
    s: usize,
    /// Check this many random supports instead of all of them.
    #[arg(long)]
    sampled: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Debug)]
struct MomentsArgs {
    #[arg(long)]
    s0: usize,
    #[arg(long)]
    delta: f64,
    #[arg(long)]
    p: u32,
}

/// Entry point of the `batchbandit` binary; returns the process exit code.
pub fn cli_main<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_cli(args, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

/// Same as [`cli_main`] with explicit output streams.
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{rendered}");
                    0
                }
                _ => {
                    let _ = write!(err, "{rendered}");
                    USAGE
                }
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => 0,
        Err((code, e)) => {
            let _ = writeln!(err, "error: {e}");
            code
        }
    }
}

type Failure = (i32, Error);

fn usage(e: Error) -> Failure {
    (USAGE, e)
}

fn runtime(e: Error) -> Failure {
    (1, e)
}

fn dispatch(command: Command, out: &mut dyn Write) -> std::result::Result<(), Failure> {
    let io = |e: std::io::Error| runtime(Error::io("<stdout>", e));
    match command {
        Command::Run(args) => {
            let mut config = ExperimentConfig::load(&args.config).map_err(usage)?;
            if let Some(seed) = args.seed {
                config.seed = seed;
            }
            if let Some(dir) = args.out {
                config.out = Some(dir);
            }
            if let Some(mode) = args.mode {
                config.splitting = mode;
            }
            if let Some(scale) = args.lambda_scale {
                config.lambda_scale = scale;
            }
            if let Some(r) = args.replications {
                config.replications = r;
            }
            if let Some(n) = args.threads {
                config.threads = Some(n);
            }
            config.validate().map_err(usage)?;
            let result = run_experiment(&config).map_err(runtime)?;
            let s = &result.summary;
            let last = s.mean_cum.len() - 1;
            writeln!(
                out,
                "replications={} T={} mean_cum_regret={} ci_half={} wall_seconds={:.3}",
                config.replications, s.t[last], s.mean_cum[last], s.ci_half[last], s.wall_seconds
            )
            .map_err(io)?;
            if let Some(dir) = &config.out {
                writeln!(out, "wrote {}", dir.display()).map_err(io)?;
            }
        }
        Command::Grid(args) => {
            let grid = compute_grid(args.horizon, args.s0, args.batches).map_err(usage)?;
            let line = grid.boundaries().iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
            writeln!(out, "{line}").map_err(io)?;
            if args.verbose {
                match grid.scale_b() {
                    Some(b) => writeln!(out, "b={b}"),
                    None => writeln!(out, "b=none"),
                }
                .map_err(io)?;
            }
        }
        Command::Diag { which: Diag::Re(args) } => {
            let matrix = read_matrix(&args.matrix).map_err(usage)?;
            let mode = match args.sampled {
                Some(supports) => EigMode::Sampled {
                    supports,
                    seed: args.seed,
                },
                None => EigMode::Exact,
            };
            let r = restricted_eigs(&matrix, args.s, mode).map_err(usage)?;
            let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
            writeln!(
                out,
                "s={} phi_min={} phi_max={} argmin={} argmax={} approximate={} supports={}",
                r.s,
                r.phi_min,
                r.phi_max,
                join(&r.argmin_support),
                join(&r.argmax_support),
                r.approximate,
                r.supports_checked
            )
            .map_err(io)?;
        }
        Command::Moments(args) => {
            let v = sphere_moment(args.s0, args.delta, args.p).map_err(usage)?;
            writeln!(out, "{v}").map_err(io)?;
        }
    }
    Ok(())
}

/// Headerless CSV of numeric rows.
fn read_matrix(path: &std::path::Path) -> Result<DMatrix<f64>> {
    let csv_err = |e| Error::Csv {
        path: path.to_owned(),
        source: e,
    };
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(csv_err)?;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(csv_err)?;
        let row = record
            .iter()
            .map(|cell| {
                cell.parse::<f64>().map_err(|_| Error::CsvRow {
                    row: i + 1,
                    message: format!("not a number: {cell:?}"),
                })
            })
            .collect::<Result<Vec<f64>>>()?;
        rows.push(row);
    }
    let n = rows.len();
    if n == 0 {
        return Err(Error::InvalidArgument(format!("{}: empty matrix", path.display())));
    }
    let flat: Vec<f64> = rows.concat();
    if flat.len() != n * n {
        return Err(Error::DimensionMismatch(format!(
            "{}: {n} rows and {} entries, expected a square matrix",
            path.display(),
            flat.len()
        )));
    }
    Ok(DMatrix::from_row_slice(n, n, &flat))
}

//! LBGL and the baseline policies it is compared against.

mod baselines;
mod grid;
mod lbgl;

pub use baselines::{run_baseline, BaselineConfig, BaselineKind};
pub use grid::{
    assign_intervals, compute_grid, floored_recursion, splitting_union, Grid, IntervalPartition,
    SplittingMode,
};
pub use lbgl::{
    lambda_schedule, run_fixed_greedy, run_lbgl, run_online_lbgl, select_action, BatchFit,
    LassoSettings, LbglConfig, LbglRun,
};

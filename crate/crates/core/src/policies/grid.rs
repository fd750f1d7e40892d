//! Static batch grid and the sample-splitting bookkeeping.

use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Batch end points `t_1 < ... < t_M = T` (1-based, inclusive).
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    boundaries: Vec<usize>,
    raw_boundaries: Vec<usize>,
    scale_b: Option<f64>,
}

impl Grid {
    /// A grid with explicitly chosen boundaries.
    pub fn from_boundaries(horizon: usize, boundaries: Vec<usize>) -> Result<Self> {
        validate_boundaries(horizon, &boundaries)?;
        Ok(Self {
            raw_boundaries: boundaries.clone(),
            boundaries,
            scale_b: None,
        })
    }

    /// `{1, 2, ..., T}`: one batch per round.
    pub fn every_round(horizon: usize) -> Result<Self> {
        Self::from_boundaries(horizon, (1..=horizon).collect())
    }

    pub fn boundaries(&self) -> &[usize] {
        &self.boundaries
    }

    /// Output of the floored recursion at the solved scale, before the last
    /// boundary is clamped to `T` and collisions are bumped apart.
    pub fn raw_boundaries(&self) -> &[usize] {
        &self.raw_boundaries
    }

    pub fn scale_b(&self) -> Option<f64> {
        self.scale_b
    }

    pub fn num_batches(&self) -> usize {
        self.boundaries.len()
    }

    pub fn horizon(&self) -> usize {
        *self.boundaries.last().expect("grid is non-empty")
    }

    /// Rounds of batch `m` (1-based) as a half-open range of 1-based times.
    pub fn batch(&self, m: usize) -> Range<usize> {
        let start = if m == 1 { 0 } else { self.boundaries[m - 2] };
        start + 1..self.boundaries[m - 1] + 1
    }
}

fn validate_boundaries(horizon: usize, boundaries: &[usize]) -> Result<()> {
    if boundaries.is_empty() {
        return Err(Error::InvalidArgument("grid needs at least one boundary".into()));
    }
    if boundaries[0] == 0 {
        return Err(Error::InvalidArgument("grid boundaries start at t_1 >= 1".into()));
    }
    if boundaries.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidArgument(format!(
            "grid boundaries not strictly increasing: {boundaries:?}"
        )));
    }
    if *boundaries.last().unwrap() != horizon {
        return Err(Error::InvalidArgument(format!(
            "last grid boundary must equal T = {horizon}"
        )));
    }
    Ok(())
}

/// `t_1 = ⌊b √s0⌋`, `t_m = ⌊b √t_{m-1}⌋` for `m = 2..=M`.
pub fn floored_recursion(scale_b: f64, s0: usize, num_batches: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(num_batches);
    let mut t = (scale_b * (s0 as f64).sqrt()).floor();
    out.push(t as usize);
    for _ in 1..num_batches {
        t = (scale_b * t.sqrt()).floor();
        out.push(t as usize);
    }
    out
}

/// Solves for the grid scale `b` and returns the resulting grid.
///
/// `b` is the smallest value (to floating-point resolution, by bisection on
/// `[1, T]`) for which the floored recursion reaches `T` at step `M`. The
/// last boundary is then set to exactly `T`, and interior boundaries that
/// collide after flooring are pushed apart by one.
pub fn compute_grid(horizon: usize, s0_bound: usize, num_batches: usize) -> Result<Grid> {
    if num_batches == 0 {
        return Err(Error::InvalidArgument("need M >= 1 batches".into()));
    }
    if s0_bound == 0 || s0_bound > horizon {
        return Err(Error::InvalidArgument(format!(
            "need 1 <= s0 <= T, got s0 = {s0_bound}, T = {horizon}"
        )));
    }
    if num_batches > horizon {
        return Err(Error::InvalidArgument(format!(
            "cannot fit M = {num_batches} strictly increasing boundaries into T = {horizon}"
        )));
    }

    let reaches = |b: f64| *floored_recursion(b, s0_bound, num_batches).last().unwrap() >= horizon;
    let mut lo = 1.0f64;
    let mut hi = horizon as f64;
    let scale_b = if reaches(lo) {
        lo
    } else {
        debug_assert!(reaches(hi));
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if reaches(mid) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        hi
    };

    let raw = floored_recursion(scale_b, s0_bound, num_batches);
    let mut boundaries = raw.clone();
    let mut prev = 0;
    for t in boundaries.iter_mut() {
        *t = (*t).max(prev + 1);
        prev = *t;
    }
    // bumped boundaries may now sit at or past T
    *boundaries.last_mut().unwrap() = horizon;
    for m in (0..num_batches - 1).rev() {
        boundaries[m] = boundaries[m].min(boundaries[m + 1] - 1);
    }
    validate_boundaries(horizon, &boundaries)?;

    Ok(Grid {
        boundaries,
        raw_boundaries: raw,
        scale_b: Some(scale_b),
    })
}

/// Each batch split into `M` contiguous intervals, earlier intervals taking
/// the remainder.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalPartition {
    grid: Grid,
}

pub fn assign_intervals(grid: &Grid) -> IntervalPartition {
    IntervalPartition { grid: grid.clone() }
}

impl IntervalPartition {
    pub fn num_batches(&self) -> usize {
        self.grid.num_batches()
    }

    /// Interval `j` (1-based) of batch `m` (1-based), as a half-open range of
    /// 1-based times. May be empty when the batch is shorter than `M`.
    pub fn interval(&self, m: usize, j: usize) -> Range<usize> {
        let parts = self.num_batches();
        let batch = self.grid.batch(m);
        let len = batch.len();
        let (q, r) = (len / parts, len % parts);
        let start = batch.start + (j - 1) * q + (j - 1).min(r);
        let size = q + usize::from(j <= r);
        start..start + size
    }

    pub fn batch_intervals(&self, m: usize) -> Vec<Range<usize>> {
        (1..=self.num_batches()).map(|j| self.interval(m, j)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SplittingMode {
    /// Fit on interval `m` of each of the first `m` batches.
    Split,
    /// Fit on every observation so far.
    #[default]
    Pooled,
}

impl std::str::FromStr for SplittingMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "split" => Ok(Self::Split),
            "pooled" => Ok(Self::Pooled),
            other => Err(Error::InvalidArgument(format!(
                "unknown splitting mode '{other}' (expected split or pooled)"
            ))),
        }
    }
}

/// The fit set after batch `m` (1-based), sorted 1-based times.
pub fn splitting_union(partition: &IntervalPartition, m: usize, mode: SplittingMode) -> Vec<usize> {
    match mode {
        SplittingMode::Split => (1..=m).flat_map(|mp| partition.interval(mp, m)).collect(),
        SplittingMode::Pooled => (1..=partition.grid.boundaries[m - 1]).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Independent scalar root of the unfloored recursion `t_M(b) = T`, where
    /// `t_M = b^(2 - 2^(1-M)) * s0^(2^-M)`.
    fn continuous_scale(horizon: f64, s0: f64, m: i32) -> f64 {
        let exponent = 2.0 - 2f64.powi(1 - m);
        (horizon / s0.powf(2f64.powi(-m))).powf(1.0 / exponent)
    }

    #[test]
    fn single_batch() {
        for (t, s0) in [(6000, 50), (10, 10), (1, 1), (77, 3)] {
            assert_eq!(compute_grid(t, s0, 1).unwrap().boundaries(), &[t]);
        }
    }

    #[test]
    fn three_batch_example() {
        let b_cont = continuous_scale(6000.0, 50.0, 3);
        assert!((b_cont - 109.0).abs() < 0.5, "{b_cont}");
        let g = compute_grid(6000, 50, 3).unwrap();
        let b = g.scale_b().unwrap();
        assert!((b - b_cont).abs() / b_cont < 0.01);
        let expected = floored_recursion(b, 50, 3);
        assert_eq!(g.raw_boundaries(), expected.as_slice());
        let bd = g.boundaries();
        assert_eq!(bd[2], 6000);
        assert!((bd[0] as i64 - 771).abs() <= 2, "{bd:?}");
        assert!((bd[1] as i64 - 3026).abs() <= 5, "{bd:?}");
    }

    #[test]
    fn two_batch_example() {
        let b_cont = continuous_scale(100.0, 4.0, 2);
        assert!((b_cont - 17.1).abs() < 0.05);
        let g = compute_grid(100, 4, 2).unwrap();
        assert_eq!(g.boundaries(), &[34, 100]);
        assert!((g.scale_b().unwrap() - 17.1).abs() < 0.1);
    }

    #[test]
    fn too_many_batches() {
        assert!(compute_grid(3, 1, 4).is_err());
        assert!(compute_grid(4, 1, 4).is_ok());
        assert!(compute_grid(10, 11, 2).is_err());
        assert!(compute_grid(10, 2, 0).is_err());
    }

    #[test]
    fn every_feasible_small_grid_is_valid() {
        for t in 1..=30 {
            for s0 in 1..=t {
                for m in 1..=t {
                    let g = compute_grid(t, s0, m).unwrap();
                    assert_eq!(g.boundaries().len(), m);
                    assert_eq!(*g.boundaries().last().unwrap(), t);
                    assert!(g.boundaries().windows(2).all(|w| w[0] < w[1]));
                }
            }
        }
    }

    #[test]
    fn interval_sizes() {
        let g = Grid::from_boundaries(12, vec![10, 12]).unwrap();
        let p = assign_intervals(&g);
        let sizes: Vec<usize> = p.batch_intervals(1).iter().map(|r| r.len()).collect();
        assert_eq!(sizes, vec![5, 5]);
        let g = Grid::from_boundaries(12, vec![10, 11, 12]).unwrap();
        let p = assign_intervals(&g);
        let sizes: Vec<usize> = p.batch_intervals(1).iter().map(|r| r.len()).collect();
        assert_eq!(sizes, vec![4, 3, 3]);
        let g = Grid::from_boundaries(14, vec![10, 12, 14]).unwrap();
        let p = assign_intervals(&g);
        let sizes: Vec<usize> = p.batch_intervals(2).iter().map(|r| r.len()).collect();
        assert_eq!(sizes, vec![1, 1, 0]);
    }

    #[test]
    fn split_union_by_hand() {
        let g = Grid::from_boundaries(10, vec![4, 10]).unwrap();
        let p = assign_intervals(&g);
        assert_eq!(p.batch_intervals(1), vec![1..3, 3..5]);
        assert_eq!(p.batch_intervals(2), vec![5..8, 8..11]);
        assert_eq!(splitting_union(&p, 1, SplittingMode::Split), vec![1, 2]);
        assert_eq!(splitting_union(&p, 2, SplittingMode::Split), vec![3, 4, 8, 9, 10]);
        assert_eq!(splitting_union(&p, 1, SplittingMode::Pooled), vec![1, 2, 3, 4]);
        assert_eq!(
            splitting_union(&p, 2, SplittingMode::Pooled),
            (1..=10).collect::<Vec<_>>()
        );
    }

    #[test]
    fn parse_mode() {
        assert_eq!("split".parse::<SplittingMode>().unwrap(), SplittingMode::Split);
        assert_eq!("pooled".parse::<SplittingMode>().unwrap(), SplittingMode::Pooled);
        assert!("both".parse::<SplittingMode>().is_err());
    }

    proptest! {
        #[test]
        fn partition_covers_each_batch(t in 20usize..5000, s0 in 1usize..20, m in 1usize..7) {
            prop_assume!(s0 <= t && m <= t);
            let g = compute_grid(t, s0, m).unwrap();
            let p = assign_intervals(&g);
            for batch in 1..=m {
                let parts = p.batch_intervals(batch);
                let flat: Vec<usize> = parts.iter().cloned().flatten().collect();
                prop_assert_eq!(flat, g.batch(batch).collect::<Vec<_>>());
                let sizes: Vec<usize> = parts.iter().map(|r| r.len()).collect();
                prop_assert!(sizes.iter().max().unwrap() - sizes.iter().min().unwrap() <= 1);
                prop_assert!(sizes.windows(2).all(|w| w[0] >= w[1]));
            }
        }

        #[test]
        fn split_sets_are_disjoint(t in 20usize..3000, s0 in 1usize..10, m in 1usize..6) {
            prop_assume!(s0 <= t && m <= t);
            let g = compute_grid(t, s0, m).unwrap();
            let p = assign_intervals(&g);
            let mut seen = vec![0u8; t + 1];
            for stage in 1..=m {
                for i in splitting_union(&p, stage, SplittingMode::Split) {
                    seen[i] += 1;
                }
            }
            prop_assert!(seen.iter().all(|&c| c <= 1));
            // exactly the intervals j >= batch index are ever used
            let expected: usize = (1..=m)
                .flat_map(|b| (b..=m).map(move |j| (b, j)))
                .map(|(b, j)| p.interval(b, j).len())
                .sum();
            prop_assert_eq!(seen.iter().map(|&c| c as usize).sum::<usize>(), expected);
        }
    }
}

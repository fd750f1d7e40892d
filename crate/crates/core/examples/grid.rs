//! Batch boundaries for a few horizons and batch counts, and how the
//! sample-splitting intervals are laid out inside them.

use batchbandit::policies::{assign_intervals, compute_grid, splitting_union, SplittingMode};

fn main() -> batchbandit::Result<()> {
    for (t, s0, m) in [(6000, 50, 1), (6000, 50, 2), (6000, 50, 3), (100_000, 10, 5)] {
        let grid = compute_grid(t, s0, m)?;
        println!(
            "T={t:<6} s0={s0:<3} M={m}  b={:<10.4} boundaries={:?}",
            grid.scale_b().unwrap(),
            grid.boundaries()
        );
    }

    let grid = compute_grid(10, 1, 2)?;
    let partition = assign_intervals(&grid);
    println!("\nT=10, M=2: boundaries {:?}", grid.boundaries());
    for m in 1..=2 {
        println!("  batch {m} intervals {:?}", partition.batch_intervals(m));
    }
    for mode in [SplittingMode::Split, SplittingMode::Pooled] {
        println!("  fit set after batch 2 ({mode:?}): {:?}", splitting_union(&partition, 2, mode));
    }
    Ok(())
}

use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use crate::error::{Error, Result};

/// Per-round regret record of one run. Times are 1-based: entry `i` belongs
/// to round `t = i + 1`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RegretTrace {
    pub replication: usize,
    pub instantaneous: Vec<f64>,
    pub cumulative: Vec<f64>,
    pub actions: Vec<usize>,
}

impl RegretTrace {
    pub fn with_capacity(replication: usize, horizon: usize) -> Self {
        Self {
            replication,
            instantaneous: Vec::with_capacity(horizon),
            cumulative: Vec::with_capacity(horizon),
            actions: Vec::with_capacity(horizon),
        }
    }

    pub fn push(&mut self, regret: f64, action: usize) {
        debug_assert!(regret >= 0.0);
        let total = self.cumulative.last().copied().unwrap_or(0.0) + regret;
        self.instantaneous.push(regret);
        self.cumulative.push(total);
        self.actions.push(action);
    }

    pub fn len(&self) -> usize {
        self.instantaneous.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instantaneous.is_empty()
    }

    pub fn total(&self) -> f64 {
        self.cumulative.last().copied().unwrap_or(0.0)
    }

    /// Writes `t,inst_regret,cum_regret,action` rows. Floats use Rust's
    /// shortest round-trip formatting, so reading back is exact.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "t,inst_regret,cum_regret,action")?;
        for i in 0..self.len() {
            writeln!(
                out,
                "{},{},{},{}",
                i + 1,
                self.instantaneous[i],
                self.cumulative[i],
                self.actions[i]
            )?;
        }
        Ok(())
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let mut buf = Vec::with_capacity(self.len() * 32);
        self.write_csv(&mut buf).expect("writing to a Vec cannot fail");
        crate::harness::write_atomic(path, &buf)
    }

    pub fn load(path: &Path, replication: usize) -> Result<Self> {
        let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
        let mut trace = Self {
            replication,
            ..Self::default()
        };
        for (i, line) in BufReader::new(file).lines().enumerate() {
            let line = line.map_err(|e| Error::io(path, e))?;
            if i == 0 {
                if line != "t,inst_regret,cum_regret,action" {
                    return Err(Error::CsvRow {
                        row: 0,
                        message: format!("unexpected trace header '{line}'"),
                    });
                }
                continue;
            }
            let bad = |what: &str| Error::CsvRow {
                row: i,
                message: format!("bad {what} in '{line}'"),
            };
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 4 {
                return Err(bad("field count"));
            }
            let t: usize = fields[0].parse().map_err(|_| bad("t"))?;
            if t != i {
                return Err(bad("t"));
            }
            trace.instantaneous.push(fields[1].parse().map_err(|_| bad("inst_regret"))?);
            trace.cumulative.push(fields[2].parse().map_err(|_| bad("cum_regret"))?);
            trace.actions.push(fields[3].parse().map_err(|_| bad("action"))?);
        }
        Ok(trace)
    }
}

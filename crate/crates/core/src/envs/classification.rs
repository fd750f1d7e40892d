use std::collections::HashMap;
use std::io::Read;
use std::path::Path;

use nalgebra::DVector;
use rand::seq::SliceRandom;

use super::{check_round, embed_shared_to_per_arm, Environment, Round, RoundContexts};
use crate::error::{Error, Result};
use crate::seed::{stream_rng, Stream};

#[derive(Debug, Clone, PartialEq)]
pub struct CsvEnvOptions {
    pub label_column: String,
    pub reward_correct: f64,
    pub reward_incorrect: f64,
    /// Permute rows with a stream derived from `seed`.
    pub shuffle: bool,
    pub seed: u64,
}

impl CsvEnvOptions {
    pub fn new(label_column: impl Into<String>) -> Self {
        Self {
            label_column: label_column.into(),
            reward_correct: 0.0,
            reward_incorrect: -1.0,
            shuffle: false,
            seed: 0,
        }
    }
}

/// Supervised data served as a bandit: round `t` shows row `t`, each label
/// value is an arm, and pulling the row's own label earns `reward_correct`.
///
/// Per-arm contexts are the row's feature vector placed in that arm's block
/// of a `K * p` vector, so a single shared linear parameter can express one
/// linear score per arm.
#[derive(Debug, Clone)]
pub struct ClassificationEnv {
    features: Vec<DVector<f64>>,
    labels: Vec<usize>,
    label_names: Vec<String>,
    feature_names: Vec<String>,
    reward_correct: f64,
    reward_incorrect: f64,
}

enum ColumnKind {
    Numeric,
    Categorical(Vec<String>),
}

impl ClassificationEnv {
    pub fn from_reader<R: Read>(reader: R, options: &CsvEnvOptions) -> Result<Self> {
        if !(options.reward_correct > options.reward_incorrect) {
            return Err(Error::InvalidArgument(format!(
                "reward_correct ({}) must exceed reward_incorrect ({})",
                options.reward_correct, options.reward_incorrect
            )));
        }
        let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_reader(reader);
        let headers: Vec<String> = rdr
            .headers()
            .map_err(|e| Error::CsvRow {
                row: 0,
                message: e.to_string(),
            })?
            .iter()
            .map(str::to_owned)
            .collect();
        let label_idx = headers
            .iter()
            .position(|h| h == &options.label_column)
            .ok_or_else(|| {
                Error::InvalidArgument(format!("label column '{}' not in header", options.label_column))
            })?;

        let mut records: Vec<Vec<String>> = Vec::new();
        for (i, rec) in rdr.records().enumerate() {
            let row = i + 1;
            let rec = rec.map_err(|e| Error::CsvRow {
                row,
                message: e.to_string(),
            })?;
            let cells: Vec<String> = rec.iter().map(|c| c.trim().to_owned()).collect();
            if let Some(j) = cells.iter().position(String::is_empty) {
                return Err(Error::CsvRow {
                    row,
                    message: format!("missing value in column '{}'", headers[j]),
                });
            }
            records.push(cells);
        }
        if records.is_empty() {
            return Err(Error::InvalidArgument("csv has no data rows".into()));
        }

        let feature_cols: Vec<usize> = (0..headers.len()).filter(|&j| j != label_idx).collect();
        let mut kinds = Vec::with_capacity(feature_cols.len());
        for &j in &feature_cols {
            let parsed: Vec<Option<f64>> = records.iter().map(|r| r[j].parse::<f64>().ok()).collect();
            if parsed.iter().all(Option::is_some) {
                if let Some(row) = parsed.iter().position(|v| !v.unwrap().is_finite()) {
                    return Err(Error::CsvRow {
                        row: row + 1,
                        message: format!("non-finite value in column '{}'", headers[j]),
                    });
                }
                kinds.push(ColumnKind::Numeric);
            } else {
                let mut levels: Vec<String> = Vec::new();
                for r in &records {
                    if !levels.contains(&r[j]) {
                        levels.push(r[j].clone());
                    }
                }
                kinds.push(ColumnKind::Categorical(levels));
            }
        }

        let mut feature_names = Vec::new();
        for (&j, kind) in feature_cols.iter().zip(&kinds) {
            match kind {
                ColumnKind::Numeric => feature_names.push(headers[j].clone()),
                ColumnKind::Categorical(levels) => {
                    feature_names.extend(levels.iter().map(|l| format!("{}={}", headers[j], l)))
                }
            }
        }

        let mut label_names: Vec<String> = Vec::new();
        let mut label_of: HashMap<String, usize> = HashMap::new();
        let mut labels = Vec::with_capacity(records.len());
        let mut features = Vec::with_capacity(records.len());
        for r in &records {
            let next = label_names.len();
            let arm = *label_of.entry(r[label_idx].clone()).or_insert_with(|| {
                label_names.push(r[label_idx].clone());
                next
            });
            labels.push(arm);

            let mut x = Vec::with_capacity(feature_names.len());
            for (&j, kind) in feature_cols.iter().zip(&kinds) {
                match kind {
                    ColumnKind::Numeric => x.push(r[j].parse::<f64>().unwrap()),
                    ColumnKind::Categorical(levels) => {
                        x.extend(levels.iter().map(|l| if *l == r[j] { 1.0 } else { 0.0 }))
                    }
                }
            }
            features.push(DVector::from_vec(x));
        }

        if options.shuffle {
            let mut order: Vec<usize> = (0..records.len()).collect();
            order.shuffle(&mut stream_rng(options.seed, 0, Stream::Shuffle));
            features = order.iter().map(|&i| features[i].clone()).collect();
            labels = order.iter().map(|&i| labels[i]).collect();
        }

        Ok(Self {
            features,
            labels,
            label_names,
            feature_names,
            reward_correct: options.reward_correct,
            reward_incorrect: options.reward_incorrect,
        })
    }

    /// Keeps only the first `horizon` rows.
    pub fn truncate(&mut self, horizon: usize) -> Result<()> {
        if horizon == 0 || horizon > self.features.len() {
            return Err(Error::OutOfRange {
                what: "horizon",
                value: horizon,
                lo: 1,
                hi: self.features.len(),
            });
        }
        self.features.truncate(horizon);
        self.labels.truncate(horizon);
        Ok(())
    }

    /// Arm index of the label at round `t`.
    pub fn label(&self, t: usize) -> Result<usize> {
        check_round(t, self.horizon())?;
        Ok(self.labels[t - 1])
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn label_names(&self) -> &[String] {
        &self.label_names
    }

    pub fn feature_names(&self) -> &[String] {
        &self.feature_names
    }

    pub fn num_features(&self) -> usize {
        self.feature_names.len()
    }
}

pub fn make_classification_env_from_csv(path: impl AsRef<Path>, options: &CsvEnvOptions) -> Result<ClassificationEnv> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    ClassificationEnv::from_reader(std::io::BufReader::new(file), options)
}

impl Environment for ClassificationEnv {
    fn horizon(&self) -> usize {
        self.features.len()
    }

    fn dim(&self) -> usize {
        self.label_names.len() * self.num_features()
    }

    fn num_arms(&self) -> usize {
        self.label_names.len()
    }

    fn draw_round(&self, t: usize) -> Result<RoundContexts> {
        check_round(t, self.horizon())?;
        let x = &self.features[t - 1];
        let k = self.num_arms();
        let arms = (0..k)
            .map(|a| embed_shared_to_per_arm(x, a, k))
            .collect::<Result<Vec<_>>>()?;
        Ok(RoundContexts { t, arms })
    }

    fn observe(&self, t: usize) -> Result<Round> {
        let contexts = self.draw_round(t)?;
        let label = self.labels[t - 1];
        let means: Vec<f64> = (0..self.num_arms())
            .map(|a| {
                if a == label {
                    self.reward_correct
                } else {
                    self.reward_incorrect
                }
            })
            .collect();
        Ok(Round {
            contexts,
            realized: means.clone(),
            means,
        })
    }

    fn reward_gap(&self) -> Option<f64> {
        Some(self.reward_correct - self.reward_incorrect)
    }
}

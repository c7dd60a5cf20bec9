use crate::error::{Error, Result};
use crate::fcore::FunctionalDataset;
use crate::rng::Rng;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SplitSpec {
    #[serde(default = "default_fraction")]
    pub train_fraction: f64,
    #[serde(default)]
    pub seed: u64,
}

fn default_fraction() -> f64 {
    0.6
}

impl Default for SplitSpec {
    fn default() -> Self {
        Self {
            train_fraction: default_fraction(),
            seed: 0,
        }
    }
}

/// Random per-curve split into training and validation sets. The training set
/// gets `round(fraction · n)` curves, clamped so both sides are nonempty.
pub fn split_dataset(
    dataset: &FunctionalDataset,
    spec: &SplitSpec,
) -> Result<(FunctionalDataset, FunctionalDataset)> {
    let n = dataset.n_curves();
    if n < 2 {
        return Err(Error::TooFewCurves {
            required: 2,
            got: n,
        });
    }
    if !(spec.train_fraction > 0.0 && spec.train_fraction < 1.0) {
        return Err(Error::Range(format!(
            "train fraction {} must lie in (0, 1)",
            spec.train_fraction
        )));
    }
    let n_train = ((spec.train_fraction * n as f64).round() as usize).clamp(1, n - 1);
    let mut order: Vec<usize> = (0..n).collect();
    Rng::new(spec.seed).shuffle(&mut order);
    let mut train = order[..n_train].to_vec();
    let mut valid = order[n_train..].to_vec();
    train.sort_unstable();
    valid.sort_unstable();
    Ok((dataset.select(&train)?, dataset.select(&valid)?))
}

use super::elbow::elbow_index;
use super::search::{PrefixSums, SplitSearch};
use crate::bases::KnotSet;
use crate::error::{Error, Result};
use crate::fcore::{DomainMap, FunctionalDataset};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StopCriterion {
    /// `|v_s − v_{s−1}| < θ`
    AbsoluteStep,
    /// `|v_s − v_{s−1}| < θ |v_s|`
    RelativeStep,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DdkConfig {
    pub theta: f64,
    pub criterion: StopCriterion,
    pub max_knots: usize,
}

impl DdkConfig {
    pub fn new(theta: f64, criterion: StopCriterion, max_knots: usize) -> Self {
        Self {
            theta,
            criterion,
            max_knots,
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.theta > 0.0) {
            return Err(Error::Range(format!(
                "theta must be positive, got {}",
                self.theta
            )));
        }
        if self.max_knots == 0 {
            return Err(Error::Range("max_knots must be at least 1".into()));
        }
        Ok(())
    }

    fn stops(&self, prev: f64, cur: f64) -> bool {
        let step = (cur - prev).abs();
        match self.criterion {
            StopCriterion::AbsoluteStep => step < self.theta,
            StopCriterion::RelativeStep => step < self.theta * cur.abs(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    Threshold,
    MaxKnots,
}

#[derive(Clone, Debug)]
pub struct DdkResult {
    /// Knots in the order they were selected.
    pub selected: Vec<f64>,
    pub knots: KnotSet,
    /// AMSE after `s` insertions, `s = 0..=stopped_at`.
    pub train_amse: Vec<f64>,
    pub valid_amse: Vec<f64>,
    pub stopped_at: usize,
    pub stop_reason: StopReason,
    /// Elbow of the validation trajectory; `None` when it has fewer than three points.
    pub elbow_index: Option<usize>,
}

impl DdkResult {
    /// Selected knots in the original (pre-rescaling) coordinates.
    pub fn domain_knots(&self, domain: &DomainMap) -> Vec<f64> {
        self.knots
            .as_slice()
            .iter()
            .map(|&t| domain.from_unit(t))
            .collect()
    }

    /// The first `s` selected knots, sorted.
    pub fn knots_at(&self, s: usize) -> KnotSet {
        KnotSet::new(self.selected[..s.min(self.selected.len())].to_vec())
            .expect("selected knots are distinct")
    }
}

/// Validation AMSE tracked over the same cells as the training search.
struct ValidTracker {
    sums: PrefixSums,
    total: f64,
    n: f64,
}

/// Greedy knot insertion on `train`, stopping on the validation trajectory.
pub fn select_knots(
    train: &FunctionalDataset,
    valid: &FunctionalDataset,
    config: &DdkConfig,
) -> Result<DdkResult> {
    config.validate()?;
    if !train.same_grid(valid) {
        return Err(Error::Dimension(
            "training and validation sets must share a grid".into(),
        ));
    }
    let mut search = SplitSearch::new(train, &KnotSet::empty());
    let m = train.grid_len();
    let mut tracker = ValidTracker {
        sums: PrefixSums::new(valid),
        total: 0.0,
        n: valid.n_curves() as f64,
    };
    tracker.total = tracker.sums.sse(0, m);
    let n_train = train.n_curves() as f64;

    let mut selected = Vec::new();
    let mut knots = KnotSet::empty();
    let mut train_amse = vec![search.total_sse / n_train];
    let mut valid_amse = vec![tracker.total / tracker.n];
    let mut stop_reason = StopReason::MaxKnots;

    while selected.len() < config.max_knots {
        let Some((ci, j, _)) = search.best() else {
            break;
        };
        let cell = search.cells[ci];
        tracker.total += tracker.sums.sse(cell.p, j) + tracker.sums.sse(j, cell.q)
            - tracker.sums.sse(cell.p, cell.q);
        search.insert(ci, j);
        let xi = search.point(j);
        knots.insert(xi)?;
        selected.push(xi);
        train_amse.push((search.total_sse / n_train).max(0.0));
        valid_amse.push((tracker.total / tracker.n).max(0.0));
        let s = selected.len();
        if config.stops(valid_amse[s - 1], valid_amse[s]) {
            stop_reason = StopReason::Threshold;
            break;
        }
    }
    let elbow = if valid_amse.len() >= 3 {
        Some(elbow_index(&valid_amse)?)
    } else {
        None
    };
    Ok(DdkResult {
        stopped_at: selected.len(),
        selected,
        knots,
        train_amse,
        valid_amse,
        stop_reason,
        elbow_index: elbow,
    })
}

//! Data-driven knot selection: greedy insertion of the knot that most reduces
//! the training error of a piecewise-constant fit, stopped on a validation set.

mod elbow;
mod search;
mod select;
mod split;

pub use elbow::elbow_index;
pub use search::best_split;
pub use select::{select_knots, DdkConfig, DdkResult, StopCriterion, StopReason};
pub use split::{split_dataset, SplitSpec};

//! Orthonormal basis selection for functional data.
//!
//! The crate converts sampled curves into orthonormal-basis coordinates,
//! selects knots from data by greedy piecewise-constant refinement, builds
//! orthonormal spline bases (splinets) on those knots, runs functional PCA,
//! and benchmarks basis choices by average mean square error.

pub mod bases;
pub mod bench;
pub mod ddk;
pub mod error;
pub mod fcore;
pub mod fpca;
pub mod linalg;
pub mod rng;
pub mod simulate;

pub use error::{Error, Result};

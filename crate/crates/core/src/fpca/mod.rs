//! Functional principal components computed on basis coefficients.

mod analysis;
mod covariance;
mod truncation;

pub use crate::linalg::{eig_sym, SymmetricEigen};
pub use analysis::{
    fpca, fpca_from_coefs, reconstruct, sum_sq_eigenvalues, total_variance, FpcaResult,
};
pub use covariance::{estimate_covariance, CoefCovariance};
pub use truncation::truncation_error;

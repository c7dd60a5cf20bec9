use super::covariance::{estimate_covariance, CoefCovariance};
use crate::bases::{project, OrthoBasis};
use crate::error::{Error, Result};
use crate::fcore::{FunctionalDataset, Grid};
use crate::linalg::eig_sym;
use ndarray::{Array1, Array2, Axis};

const SIGN_TOL: f64 = 1e-9;

#[derive(Clone, Debug)]
pub struct FpcaResult<'a> {
    /// Nonincreasing eigenvalues of the coefficient covariance.
    pub eigenvalues: Array1<f64>,
    /// Column `k` holds the coefficients of eigenfunction `k` in `basis`.
    pub eigenvectors: Array2<f64>,
    pub covariance: CoefCovariance,
    pub basis: &'a OrthoBasis,
}

impl FpcaResult<'_> {
    /// First `count` eigenfunctions sampled on `grid` (`m × count`).
    pub fn eigenfunctions(&self, grid: &Grid, count: usize) -> Array2<f64> {
        let count = count.min(self.eigenvectors.ncols());
        self.basis
            .sample(grid)
            .dot(&self.eigenvectors.slice(ndarray::s![.., ..count]))
    }

    /// Mean curve on `grid` (zero when the analysis was not centered).
    pub fn mean_curve(&self, grid: &Grid) -> Array1<f64> {
        self.basis.sample(grid).dot(&self.covariance.mean_coefs)
    }

    /// `Σ λ_k`, the expected squared norm of the centered data in the basis span.
    pub fn total_variance(&self) -> f64 {
        total_variance(self.eigenvalues.as_slice().expect("contiguous"))
    }

    pub fn sum_sq_eigenvalues(&self) -> f64 {
        sum_sq_eigenvalues(self.eigenvalues.as_slice().expect("contiguous"))
    }
}

pub fn total_variance(eigenvalues: &[f64]) -> f64 {
    eigenvalues.iter().sum()
}

pub fn sum_sq_eigenvalues(eigenvalues: &[f64]) -> f64 {
    eigenvalues.iter().map(|l| l * l).sum()
}

/// Flips each column so its first entry larger than 1e-9 in magnitude is positive.
pub(crate) fn fix_signs(vectors: &mut Array2<f64>) {
    for mut col in vectors.axis_iter_mut(Axis(1)) {
        if let Some(&lead) = col.iter().find(|v| v.abs() > SIGN_TOL) {
            if lead < 0.0 {
                col.mapv_inplace(|v| -v);
            }
        }
    }
}

/// Principal components of the basis coefficients of `dataset`.
pub fn fpca<'a>(
    dataset: &FunctionalDataset,
    basis: &'a OrthoBasis,
    center: bool,
) -> Result<FpcaResult<'a>> {
    let coefs = project(dataset, basis);
    fpca_from_coefs(&coefs, basis, center)
}

/// As [`fpca`], starting from precomputed coefficients.
pub fn fpca_from_coefs<'a>(
    coefs: &Array2<f64>,
    basis: &'a OrthoBasis,
    center: bool,
) -> Result<FpcaResult<'a>> {
    if coefs.ncols() != basis.size() {
        return Err(Error::Dimension(format!(
            "{} coefficients per curve for a basis of size {}",
            coefs.ncols(),
            basis.size()
        )));
    }
    let covariance = estimate_covariance(coefs, center)?;
    let eig = eig_sym(&covariance.matrix)?;
    let mut vectors = eig.vectors;
    fix_signs(&mut vectors);
    Ok(FpcaResult {
        eigenvalues: eig.values,
        eigenvectors: vectors,
        covariance,
        basis,
    })
}

/// Curves rebuilt from the mean and the first `components` eigenfunctions.
/// Scores are computed from the basis coefficients.
pub fn reconstruct(
    dataset: &FunctionalDataset,
    result: &FpcaResult<'_>,
    components: usize,
) -> Result<FunctionalDataset> {
    let size = result.eigenvectors.ncols();
    if components == 0 || components > size {
        return Err(Error::Range(format!(
            "component count {components} outside 1..={size}"
        )));
    }
    let mean = &result.covariance.mean_coefs;
    let coefs = project(dataset, result.basis) - mean.view().insert_axis(Axis(0));
    let v = result.eigenvectors.slice(ndarray::s![.., ..components]);
    let kept = coefs.dot(&v).dot(&v.t()) + mean.view().insert_axis(Axis(0));
    let values = kept.dot(&result.basis.sample(dataset.grid()).t());
    dataset.with_values(values)
}

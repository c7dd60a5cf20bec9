use super::ortho::OrthoBasis;
use crate::error::{Error, Result};
use crate::fcore::{FunctionalDataset, Grid};
use crate::linalg::right_solve_spd;
use ndarray::{Array2, Axis};

/// Sampled basis with the quadrature weights folded in.
fn weighted_design(basis: &OrthoBasis, grid: &Grid) -> (Array2<f64>, Array2<f64>) {
    let phi = basis.sample(grid);
    let mut wphi = phi.clone();
    for (mut row, &w) in wphi.axis_iter_mut(Axis(0)).zip(grid.weights()) {
        row *= w;
    }
    (phi, wphi)
}

/// A basis sampled on a fixed grid, for projecting many datasets cheaply.
#[derive(Clone, Debug)]
pub struct SampledBasis {
    grid: Grid,
    phi: Array2<f64>,
    wphi: Array2<f64>,
    gram: Array2<f64>,
}

impl SampledBasis {
    pub fn new(basis: &OrthoBasis, grid: &Grid) -> Self {
        let (phi, wphi) = weighted_design(basis, grid);
        let gram = phi.t().dot(&wphi);
        Self {
            grid: grid.clone(),
            phi,
            wphi,
            gram,
        }
    }

    /// Basis values, `m × size`.
    pub fn values(&self) -> &Array2<f64> {
        &self.phi
    }

    fn check(&self, dataset: &FunctionalDataset) -> Result<()> {
        if dataset.grid() != &self.grid {
            return Err(Error::Dimension(
                "dataset grid differs from the sampling grid".into(),
            ));
        }
        Ok(())
    }

    pub fn project(&self, dataset: &FunctionalDataset) -> Result<Array2<f64>> {
        self.check(dataset)?;
        Ok(dataset.values().dot(&self.wphi))
    }

    pub fn amse(&self, dataset: &FunctionalDataset) -> Result<f64> {
        self.check(dataset)?;
        let x = dataset.values();
        let c = x.dot(&self.wphi);
        let beta = right_solve_spd(&c, &self.gram)?;
        let fitted = beta.dot(&self.phi.t());
        let w = self.grid.weights();
        let mut total = 0.0;
        for (row, fit) in x.rows().into_iter().zip(fitted.rows()) {
            for ((&a, &b), &wj) in row.iter().zip(fit.iter()).zip(w) {
                total += wj * (a - b) * (a - b);
            }
        }
        Ok(total / x.nrows() as f64)
    }
}

/// Coefficients `c_ij = ⟨x_i, f_j⟩` under the grid inner product.
pub fn project(dataset: &FunctionalDataset, basis: &OrthoBasis) -> Array2<f64> {
    let (_, wphi) = weighted_design(basis, dataset.grid());
    dataset.values().dot(&wphi)
}

/// Curves `Σ_j c_ij f_j` sampled on `grid`.
pub fn reconstruct(coefs: &Array2<f64>, basis: &OrthoBasis, grid: &Grid) -> Result<Array2<f64>> {
    if coefs.ncols() != basis.size() {
        return Err(Error::Dimension(format!(
            "{} coefficients per curve for a basis of size {}",
            coefs.ncols(),
            basis.size()
        )));
    }
    Ok(coefs.dot(&basis.sample(grid).t()))
}

/// Average squared distance between each curve and its orthogonal projection
/// onto the span of `basis`, both measured with the grid inner product.
///
/// The projection is the weighted least-squares fit on the grid, so refining
/// the basis never increases the result.
pub fn amse(dataset: &FunctionalDataset, basis: &OrthoBasis) -> Result<f64> {
    SampledBasis::new(basis, dataset.grid()).amse(dataset)
}

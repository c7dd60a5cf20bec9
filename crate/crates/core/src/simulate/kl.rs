use crate::bases::{build_splinet, KnotSet, OrthoBasis};
use crate::error::{Error, Result};
use crate::fcore::{FunctionalDataset, Grid};
use crate::rng::Rng;
use ndarray::{Array1, Array2};
use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_1_SQRT_2;

/// Finite Karhunen-Loève model `X = Σ_k √λ_k Z_k e_k + σ₀ dB` with
/// `e_k = Σ_i a_ki f_i`.
#[derive(Clone, Debug)]
pub struct KlModel {
    pub a: Array2<f64>,
    pub lambda: Vec<f64>,
    pub basis: OrthoBasis,
    pub sigma0: f64,
}

/// JSON form of a [`KlModel`]; the basis is a splinet on `knots`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KlSpec {
    /// Mixing matrix, one inner array per eigenfunction.
    #[serde(default = "default_a")]
    pub a: Vec<Vec<f64>>,
    #[serde(default = "default_lambda")]
    pub lambda: Vec<f64>,
    #[serde(default)]
    pub sigma0: f64,
    #[serde(default = "default_knots")]
    pub knots: Vec<f64>,
    #[serde(default = "default_degree")]
    pub degree: usize,
}

impl Default for KlSpec {
    fn default() -> Self {
        Self {
            a: default_a(),
            lambda: default_lambda(),
            sigma0: 0.0,
            knots: default_knots(),
            degree: default_degree(),
        }
    }
}

fn default_a() -> Vec<Vec<f64>> {
    let h = FRAC_1_SQRT_2;
    let t = 1.0 / 3f64.sqrt();
    vec![
        vec![h, 0.0, 0.0, 0.0, h, 0.0, 0.0, 0.0, 0.0],
        vec![0.0, h, 0.0, 0.0, 0.0, h, 0.0, 0.0, 0.0],
        vec![0.0, 0.0, h, 0.0, 0.0, 0.0, h, 0.0, 0.0],
        vec![0.0, 0.0, 0.0, t, 0.0, 0.0, 0.0, t, t],
    ]
}

fn default_lambda() -> Vec<f64> {
    vec![1.0, 0.5, 0.3, 0.01]
}

/// Five irregular, clustered knots: with cubic splines they give nine
/// elements whose supports pile up in the left half of the interval.
fn default_knots() -> Vec<f64> {
    vec![0.3, 0.35, 0.4, 0.45, 0.5]
}

fn default_degree() -> usize {
    3
}

impl KlModel {
    pub fn new(a: Array2<f64>, lambda: Vec<f64>, basis: OrthoBasis, sigma0: f64) -> Result<Self> {
        let (k, i) = a.dim();
        if lambda.len() != k {
            return Err(Error::Dimension(format!(
                "{} eigenvalues for {k} eigenfunctions",
                lambda.len()
            )));
        }
        if i != basis.size() {
            return Err(Error::Dimension(format!(
                "mixing matrix has {i} columns, basis has {}",
                basis.size()
            )));
        }
        if lambda.iter().any(|&l| !(l > 0.0)) || lambda.windows(2).any(|w| w[1] > w[0]) {
            return Err(Error::Config(
                "eigenvalues must be positive and nonincreasing".into(),
            ));
        }
        if !(sigma0 >= 0.0 && sigma0.is_finite()) {
            return Err(Error::Config(format!(
                "noise level {sigma0} must be nonnegative"
            )));
        }
        let g = a.dot(&a.t());
        if (&g - &Array2::<f64>::eye(k)).iter().any(|v| v.abs() > 1e-9) {
            return Err(Error::Config(
                "rows of the mixing matrix must be orthonormal".into(),
            ));
        }
        Ok(Self {
            a,
            lambda,
            basis,
            sigma0,
        })
    }

    pub fn from_spec(spec: &KlSpec) -> Result<Self> {
        let rows = spec.a.len();
        let cols = spec.a.first().map_or(0, Vec::len);
        if rows == 0 || spec.a.iter().any(|r| r.len() != cols) {
            return Err(Error::Config(
                "mixing matrix must be a nonempty rectangular array".into(),
            ));
        }
        let a = Array2::from_shape_vec((rows, cols), spec.a.concat()).expect("rectangular");
        let basis = build_splinet(&KnotSet::new(spec.knots.clone())?, spec.degree)?;
        Self::new(a, spec.lambda.clone(), basis, spec.sigma0)
    }

    /// Model of the sparse example with noise level `sigma0`.
    pub fn sparse_example(sigma0: f64) -> Self {
        Self::from_spec(&KlSpec {
            sigma0,
            ..KlSpec::default()
        })
        .expect("built-in model is valid")
    }

    /// `AᵀΛA + σ₀²I`, the covariance of the basis coefficients.
    pub fn coefficient_covariance(&self) -> Array2<f64> {
        let scaled = Array2::from_shape_fn(self.a.dim(), |(k, i)| self.lambda[k] * self.a[[k, i]]);
        self.a.t().dot(&scaled) + Array2::<f64>::eye(self.a.ncols()) * self.sigma0 * self.sigma0
    }

    /// Eigenfunctions on `grid`, one column each.
    pub fn eigenfunctions(&self, grid: &Grid) -> Array2<f64> {
        self.basis.sample(grid).dot(&self.a.t())
    }

    /// Noise-free curve for given scores `z`.
    pub fn curve_from_scores(&self, eigenfunctions: &Array2<f64>, z: &[f64]) -> Array1<f64> {
        let w: Array1<f64> = z
            .iter()
            .zip(&self.lambda)
            .map(|(z, l)| l.sqrt() * z)
            .collect();
        eigenfunctions.dot(&w)
    }
}

/// `n` curves from the model on a uniform grid. Curve `i` uses the stream
/// derived from `(seed, i)`: first the `K` scores, then the noise.
pub fn sample_kl(model: &KlModel, n: usize, grid: &Grid, seed: u64) -> Result<FunctionalDataset> {
    let step = grid
        .uniform_step()
        .ok_or_else(|| Error::Unsupported("the noise model needs a uniform grid".into()))?;
    let ef = model.eigenfunctions(grid);
    let k = model.lambda.len();
    let noise_sd = model.sigma0 / step.sqrt();
    let m = grid.len();
    let mut values = Array2::<f64>::zeros((n, m));
    let mut z = vec![0.0; k];
    for (i, mut row) in values.rows_mut().into_iter().enumerate() {
        let mut rng = Rng::child(seed, i as u64);
        rng.fill_normal(&mut z);
        row.assign(&model.curve_from_scores(&ef, &z));
        if noise_sd > 0.0 {
            for v in row.iter_mut() {
                *v += noise_sd * rng.normal();
            }
        }
    }
    FunctionalDataset::new(grid.clone(), values)
}

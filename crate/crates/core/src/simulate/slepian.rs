//! Gaussian process seen from its up-crossings of level `u`:
//! `X_u(t) = u r(t) − R r′(t) + Δ(t)` with `R` standard Rayleigh and `Δ` a
//! centered Gaussian process with covariance `r(t−s) − r(t)r(s) − r′(t)r′(s)`.

use crate::error::{Error, Result};
use crate::fcore::{FunctionalDataset, Grid};
use crate::linalg::cholesky_jittered;
use crate::rng::Rng;
use ndarray::Array2;
use serde::{Deserialize, Serialize};

/// Normalized covariance functions (`r(0) = 1`, `−r″(0) = 1`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum Correlation {
    /// `exp(−t²/2)`
    Gaussian,
}

impl Correlation {
    pub fn r(&self, t: f64) -> f64 {
        match self {
            Correlation::Gaussian => (-0.5 * t * t).exp(),
        }
    }

    pub fn r_prime(&self, t: f64) -> f64 {
        match self {
            Correlation::Gaussian => -t * (-0.5 * t * t).exp(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SlepianGaussModel {
    pub u: f64,
    #[serde(default = "default_r")]
    pub r: Correlation,
    /// Time span mapped onto the unit grid.
    #[serde(default = "default_t_min")]
    pub t_min: f64,
    #[serde(default = "default_t_max")]
    pub t_max: f64,
}

fn default_r() -> Correlation {
    Correlation::Gaussian
}
fn default_t_min() -> f64 {
    -5.0
}
fn default_t_max() -> f64 {
    5.0
}

impl Default for SlepianGaussModel {
    fn default() -> Self {
        Self {
            u: 1.0,
            r: default_r(),
            t_min: default_t_min(),
            t_max: default_t_max(),
        }
    }
}

const JITTER_START: f64 = 1e-10;
const JITTER_MAX: f64 = 1e-6;

impl SlepianGaussModel {
    pub fn validate(&self) -> Result<()> {
        if !(self.t_max > self.t_min) || !self.u.is_finite() {
            return Err(Error::Config(
                "time span must be increasing and u finite".into(),
            ));
        }
        let h = 1e-4;
        let r0 = self.r.r(0.0);
        let curv = -(self.r.r(h) - 2.0 * r0 + self.r.r(-h)) / (h * h);
        if (r0 - 1.0).abs() > 1e-6 || (curv - 1.0).abs() > 1e-6 {
            return Err(Error::Config(
                "covariance must satisfy r(0) = 1 and −r″(0) = 1".into(),
            ));
        }
        Ok(())
    }

    /// Time of unit-grid coordinate `s`.
    pub fn time(&self, s: f64) -> f64 {
        self.t_min + s * (self.t_max - self.t_min)
    }

    pub fn residual_covariance(&self, t: f64, s: f64) -> f64 {
        let r = &self.r;
        r.r(t - s) - r.r(t) * r.r(s) - r.r_prime(t) * r.r_prime(s)
    }

    /// `u r(t) + √(π/2) (−r′(t))`.
    pub fn mean(&self, t: f64) -> f64 {
        self.u * self.r.r(t) - (std::f64::consts::PI / 2.0).sqrt() * self.r.r_prime(t)
    }
}

/// `n` curves of the Slepian model on `grid`; curve `i` uses the stream
/// derived from `(seed, i)`: the Rayleigh amplitude first, then `Δ`.
pub fn sample_slepian_gauss(
    model: &SlepianGaussModel,
    n: usize,
    grid: &Grid,
    seed: u64,
) -> Result<FunctionalDataset> {
    model.validate()?;
    let times: Vec<f64> = grid.points().iter().map(|&s| model.time(s)).collect();
    let m = times.len();
    let cov = Array2::from_shape_fn((m, m), |(a, b)| {
        model.residual_covariance(times[a], times[b])
    });
    let (chol, _) = cholesky_jittered(&cov, JITTER_START, JITTER_MAX)?;
    let base: Vec<f64> = times.iter().map(|&t| model.u * model.r.r(t)).collect();
    let slope: Vec<f64> = times.iter().map(|&t| model.r.r_prime(t)).collect();
    let mut values = Array2::<f64>::zeros((n, m));
    let mut z = vec![0.0; m];
    for (i, mut row) in values.rows_mut().into_iter().enumerate() {
        let mut rng = Rng::child(seed, i as u64);
        let amp = rng.rayleigh();
        rng.fill_normal(&mut z);
        for a in 0..m {
            let l = chol.row(a);
            let delta: f64 = (0..=a).map(|b| l[b] * z[b]).sum();
            row[a] = base[a] - amp * slope[a] + delta;
        }
    }
    FunctionalDataset::new(grid.clone(), values)
}

use crate::error::{Error, Result};

const UNIFORM_TOL: f64 = 1e-12;

/// Sampling grid on the unit interval.
///
/// Points are strictly increasing inside `[0, 1]`. Each point carries the
/// left-Riemann weight `t_{j+1} - t_j`; the last point reuses the previous
/// step. For [`Grid::uniform`] the points are `j/m`, so the weights sum to 1.
#[derive(Clone, Debug, PartialEq)]
pub struct Grid {
    points: Vec<f64>,
    weights: Vec<f64>,
    uniform_step: Option<f64>,
}

impl Grid {
    pub fn new(points: Vec<f64>) -> Result<Self> {
        let m = points.len();
        if m < 2 {
            return Err(Error::InvalidGrid(format!(
                "need at least 2 points, got {m}"
            )));
        }
        if points.iter().any(|t| !t.is_finite()) {
            return Err(Error::InvalidGrid("non-finite grid point".into()));
        }
        if points[0] < 0.0 || points[m - 1] > 1.0 {
            return Err(Error::InvalidGrid(format!(
                "points must lie in [0, 1], got [{}, {}]",
                points[0],
                points[m - 1]
            )));
        }
        if let Some(j) = (1..m).find(|&j| points[j] <= points[j - 1]) {
            return Err(Error::InvalidGrid(format!(
                "points not strictly increasing at index {j}"
            )));
        }
        let mean_step = (points[m - 1] - points[0]) / (m - 1) as f64;
        let uniform = (1..m).all(|j| ((points[j] - points[j - 1]) - mean_step).abs() < UNIFORM_TOL);
        let weights = if uniform {
            vec![mean_step; m]
        } else {
            let mut w: Vec<f64> = points.windows(2).map(|p| p[1] - p[0]).collect();
            w.push(w[m - 2]);
            w
        };
        Ok(Self {
            points,
            weights,
            uniform_step: uniform.then_some(mean_step),
        })
    }

    /// `m` equispaced points `0, 1/m, ..., (m-1)/m`.
    pub fn uniform(m: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidGrid(format!(
                "need at least 2 points, got {m}"
            )));
        }
        let h = 1.0 / m as f64;
        Ok(Self {
            points: (0..m).map(|j| j as f64 * h).collect(),
            weights: vec![h; m],
            uniform_step: Some(h),
        })
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn uniform_step(&self) -> Option<f64> {
        self.uniform_step
    }

    /// Index of the first grid point `>= t`, or `len()` when none.
    pub fn first_at_or_after(&self, t: f64) -> usize {
        self.points.partition_point(|&p| p < t)
    }

    fn check(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.len() {
            return Err(Error::Dimension(format!(
                "sampled function has {} values, grid has {}",
                x.len(),
                self.len()
            )));
        }
        Ok(())
    }

    /// Left-Riemann approximation of `∫ x y`.
    pub fn inner_product(&self, x: &[f64], y: &[f64]) -> Result<f64> {
        self.check(x)?;
        self.check(y)?;
        Ok(self
            .weights
            .iter()
            .zip(x.iter().zip(y))
            .map(|(w, (a, b))| w * a * b)
            .sum())
    }

    pub fn l2_norm_sq(&self, x: &[f64]) -> Result<f64> {
        self.check(x)?;
        Ok(self.weights.iter().zip(x).map(|(w, a)| w * a * a).sum())
    }

    pub fn sample<F: Fn(f64) -> f64>(&self, f: F) -> Vec<f64> {
        self.points.iter().map(|&t| f(t)).collect()
    }
}

pub fn inner_product(grid: &Grid, x: &[f64], y: &[f64]) -> Result<f64> {
    grid.inner_product(x, y)
}

pub fn l2_norm_sq(grid: &Grid, x: &[f64]) -> Result<f64> {
    grid.l2_norm_sq(x)
}

/// Affine map between an observation domain and the unit interval.
///
/// A grid `a = s_0 < ... < s_{m-1}` maps onto `[0, 1)` so that the trailing
/// Riemann cell (of width `s_{m-1} - s_{m-2}`) ends exactly at 1.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct DomainMap {
    pub origin: f64,
    pub span: f64,
}

impl DomainMap {
    pub fn identity() -> Self {
        Self {
            origin: 0.0,
            span: 1.0,
        }
    }

    pub fn fit(raw: &[f64]) -> Result<Self> {
        let m = raw.len();
        if m < 2 {
            return Err(Error::InvalidGrid(format!(
                "need at least 2 points, got {m}"
            )));
        }
        let last_step = raw[m - 1] - raw[m - 2];
        let span = raw[m - 1] - raw[0] + last_step;
        if !(span > 0.0) || !span.is_finite() {
            return Err(Error::InvalidGrid("points not strictly increasing".into()));
        }
        Ok(Self {
            origin: raw[0],
            span,
        })
    }

    pub fn to_unit(&self, s: f64) -> f64 {
        (s - self.origin) / self.span
    }

    pub fn from_unit(&self, t: f64) -> f64 {
        self.origin + t * self.span
    }

    pub fn is_identity(&self) -> bool {
        self.origin == 0.0 && self.span == 1.0
    }
}

use super::grid::{DomainMap, Grid};
use crate::error::{Error, Result};
use ndarray::{Array2, ArrayView1, Axis};

/// `n` curves sampled on a shared grid; row `i` of `values` is curve `i`.
#[derive(Clone, Debug)]
pub struct FunctionalDataset {
    grid: Grid,
    values: Array2<f64>,
    labels: Option<Vec<String>>,
    domain: DomainMap,
}

impl FunctionalDataset {
    pub fn new(grid: Grid, values: Array2<f64>) -> Result<Self> {
        Self::with_labels(grid, values, None)
    }

    pub fn with_labels(
        grid: Grid,
        values: Array2<f64>,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        let (n, m) = values.dim();
        if n == 0 {
            return Err(Error::InvalidDataset("dataset has no curves".into()));
        }
        if m != grid.len() {
            return Err(Error::Dimension(format!(
                "curves have {m} samples, grid has {}",
                grid.len()
            )));
        }
        if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidDataset(format!(
                "non-finite value in curve {} at sample {}",
                pos / m,
                pos % m
            )));
        }
        if let Some(l) = &labels {
            if l.len() != n {
                return Err(Error::Dimension(format!(
                    "{} labels for {n} curves",
                    l.len()
                )));
            }
        }
        Ok(Self {
            grid,
            values: values.as_standard_layout().into_owned(),
            labels,
            domain: DomainMap::identity(),
        })
    }

    /// Builds a dataset from points in an arbitrary observation domain,
    /// rescaling them onto the unit interval.
    pub fn from_domain(
        raw_points: &[f64],
        values: Array2<f64>,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        let domain = DomainMap::fit(raw_points)?;
        let unit: Vec<f64> = raw_points.iter().map(|&s| domain.to_unit(s)).collect();
        // Snap a grid that is uniform in the original domain exactly onto j/m.
        let grid = match Grid::new(unit)? {
            g if g.uniform_step().is_some() && g.points()[0] == 0.0 => Grid::uniform(g.len())?,
            g => g,
        };
        let mut ds = Self::with_labels(grid, values, labels)?;
        ds.domain = domain;
        Ok(ds)
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &Array2<f64> {
        &self.values
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn domain(&self) -> DomainMap {
        self.domain
    }

    pub fn n_curves(&self) -> usize {
        self.values.nrows()
    }

    pub fn grid_len(&self) -> usize {
        self.values.ncols()
    }

    pub fn curve(&self, i: usize) -> &[f64] {
        self.values
            .row(i)
            .to_slice()
            .expect("dataset values are stored in standard layout")
    }

    pub fn curve_view(&self, i: usize) -> ArrayView1<'_, f64> {
        self.values.row(i)
    }

    /// Subset of curves in the given order; grid and domain are shared.
    pub fn select(&self, indices: &[usize]) -> Result<Self> {
        if let Some(&bad) = indices.iter().find(|&&i| i >= self.n_curves()) {
            return Err(Error::Range(format!("curve index {bad} out of range")));
        }
        let values = self.values.select(Axis(0), indices);
        let labels = self
            .labels
            .as_ref()
            .map(|l| indices.iter().map(|&i| l[i].clone()).collect());
        let mut ds = Self::with_labels(self.grid.clone(), values, labels)?;
        ds.domain = self.domain;
        Ok(ds)
    }

    /// Same curves with replaced values (e.g. a reconstruction).
    pub fn with_values(&self, values: Array2<f64>) -> Result<Self> {
        let mut ds = Self::with_labels(self.grid.clone(), values, self.labels.clone())?;
        ds.domain = self.domain;
        Ok(ds)
    }

    pub fn set_domain(&mut self, domain: DomainMap) {
        self.domain = domain;
    }

    /// Grid points mapped back to the observation domain.
    pub fn domain_points(&self) -> Vec<f64> {
        self.grid
            .points()
            .iter()
            .map(|&t| self.domain.from_unit(t))
            .collect()
    }

    pub fn same_grid(&self, other: &Self) -> bool {
        self.grid == other.grid
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_nan_and_empty() {
        let g = Grid::uniform(3).unwrap();
        assert!(FunctionalDataset::new(g.clone(), Array2::zeros((0, 3))).is_err());
        let mut v = Array2::zeros((1, 3));
        v[[0, 1]] = f64::NAN;
        assert!(FunctionalDataset::new(g.clone(), v).is_err());
        assert!(FunctionalDataset::new(g, Array2::zeros((2, 4))).is_err());
    }

    #[test]
    fn select_keeps_rows() {
        let g = Grid::uniform(2).unwrap();
        let v = ndarray::array![[1.0, 2.0], [3.0, 4.0], [5.0, 6.0]];
        let ds =
            FunctionalDataset::with_labels(g, v, Some(vec!["a".into(), "b".into(), "c".into()]))
                .unwrap();
        let sub = ds.select(&[2, 0]).unwrap();
        assert_eq!(sub.curve(0), &[5.0, 6.0]);
        assert_eq!(sub.labels().unwrap(), &["c".to_string(), "a".to_string()]);
    }

    #[test]
    fn rescales_foreign_domain() {
        let raw: Vec<f64> = (0..34).map(|j| -7.0 + j as f64).collect();
        let ds = FunctionalDataset::from_domain(&raw, Array2::zeros((1, 34)), None).unwrap();
        assert!(ds.grid().uniform_step().is_some());
        assert_eq!(ds.grid().points()[1], 1.0 / 34.0);
        let back = ds.domain_points();
        assert!((back[33] - 26.0).abs() < 1e-12);
    }
}

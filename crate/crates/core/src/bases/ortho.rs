use super::bspline::BsplineFamily;
use super::knots::KnotSet;
use super::splinet::{self, SplinetElement};
use crate::error::{Error, Result};
use crate::fcore::{exact_poly_inner_product, Grid, PiecewisePolynomial};
use ndarray::Array2;
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, SQRT_2};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BasisKind {
    PiecewiseConstant,
    Fourier,
    Splinet,
}

#[derive(Clone, Debug)]
enum Repr {
    PiecewiseConstant {
        edges: Vec<f64>,
    },
    Fourier,
    Spline {
        family: BsplineFamily,
        /// Column `j` is element `j` in B-spline coordinates.
        coefs: Array2<f64>,
        layout: Vec<SplinetElement>,
    },
}

/// An orthonormal system on `[0, 1]`.
#[derive(Clone, Debug)]
pub struct OrthoBasis {
    kind: BasisKind,
    size: usize,
    degree: usize,
    knots: Option<KnotSet>,
    repr: Repr,
}

/// Normalized indicators of the intervals cut by `knots`.
pub fn build_piecewise_constant(knots: &KnotSet) -> OrthoBasis {
    let edges = knots.edges();
    OrthoBasis {
        kind: BasisKind::PiecewiseConstant,
        size: edges.len() - 1,
        degree: 0,
        knots: Some(knots.clone()),
        repr: Repr::PiecewiseConstant { edges },
    }
}

/// `1, √2 sin 2πt, √2 cos 2πt, √2 sin 4πt, ...` truncated at `size`.
pub fn build_fourier(size: usize) -> Result<OrthoBasis> {
    if size == 0 {
        return Err(Error::Range(
            "Fourier basis needs at least one element".into(),
        ));
    }
    Ok(OrthoBasis {
        kind: BasisKind::Fourier,
        size,
        degree: 0,
        knots: None,
        repr: Repr::Fourier,
    })
}

/// Orthonormal splines spanning the clamped B-splines of `degree` on `knots`.
pub fn build_splinet(knots: &KnotSet, degree: usize) -> Result<OrthoBasis> {
    if knots.len() < degree + 1 {
        return Err(Error::InsufficientKnots {
            required: degree + 1,
            got: knots.len(),
        });
    }
    let family = BsplineFamily::new(knots.clone(), degree)?;
    let (coefs, layout) = splinet::orthogonalize(&family)?;
    Ok(OrthoBasis {
        kind: BasisKind::Splinet,
        size: family.len(),
        degree,
        knots: Some(knots.clone()),
        repr: Repr::Spline {
            family,
            coefs,
            layout,
        },
    })
}

impl OrthoBasis {
    pub fn kind(&self) -> BasisKind {
        self.kind
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn knots(&self) -> Option<&KnotSet> {
        self.knots.as_ref()
    }

    /// Pyramid placement of each element (splinets only).
    pub fn splinet_layout(&self) -> Option<&[SplinetElement]> {
        match &self.repr {
            Repr::Spline { layout, .. } => Some(layout),
            _ => None,
        }
    }

    /// Underlying B-splines and the change of basis (splinets only).
    pub fn spline_parts(&self) -> Option<(&BsplineFamily, &Array2<f64>)> {
        match &self.repr {
            Repr::Spline { family, coefs, .. } => Some((family, coefs)),
            _ => None,
        }
    }

    pub fn eval(&self, index: usize, t: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::Domain(t));
        }
        if index >= self.size {
            return Err(Error::Range(format!(
                "element {index} of a basis of size {}",
                self.size
            )));
        }
        let mut all = vec![0.0; self.size];
        self.eval_all_unchecked(t, &mut all);
        Ok(all[index])
    }

    /// All element values at `t` written into `out` (length `size`).
    pub fn eval_all(&self, t: f64, out: &mut [f64]) -> Result<()> {
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::Domain(t));
        }
        if out.len() != self.size {
            return Err(Error::Dimension(format!(
                "buffer {} for basis size {}",
                out.len(),
                self.size
            )));
        }
        self.eval_all_unchecked(t, out);
        Ok(())
    }

    fn eval_all_unchecked(&self, t: f64, out: &mut [f64]) {
        out.iter_mut().for_each(|v| *v = 0.0);
        match &self.repr {
            Repr::PiecewiseConstant { edges } => {
                let j = interval_of(edges, t);
                out[j] = 1.0 / (edges[j + 1] - edges[j]).sqrt();
            }
            Repr::Fourier => {
                for (j, v) in out.iter_mut().enumerate() {
                    *v = fourier(j, t);
                }
            }
            Repr::Spline { family, coefs, .. } => {
                let k = family.degree();
                let mut vals = vec![0.0; k + 1];
                let mu = family.nonzero_at(t, &mut vals);
                for (r, &b) in vals.iter().enumerate() {
                    if b == 0.0 {
                        continue;
                    }
                    let row = coefs.row(mu - k + r);
                    for (o, &c) in out.iter_mut().zip(row.iter()) {
                        *o += b * c;
                    }
                }
            }
        }
    }

    /// Values on a grid: `m × size`, row `i` holds every element at `t_i`.
    pub fn sample(&self, grid: &Grid) -> Array2<f64> {
        self.sample_points(grid.points())
    }

    pub fn sample_points(&self, points: &[f64]) -> Array2<f64> {
        let mut out = Array2::<f64>::zeros((points.len(), self.size));
        match &self.repr {
            Repr::Spline { family, coefs, .. } => {
                out = family.design(points).dot(coefs);
            }
            _ => {
                for (i, &t) in points.iter().enumerate() {
                    let row = out.row_mut(i).into_slice().expect("standard layout");
                    self.eval_all_unchecked(t.clamp(0.0, 1.0), row);
                }
            }
        }
        out
    }

    /// Exact Gram matrix of the elements: analytic for piecewise-constant and
    /// Fourier, piecewise Gauss-Legendre for splinets.
    pub fn gram(&self) -> Result<Array2<f64>> {
        let n = self.size;
        match &self.repr {
            Repr::PiecewiseConstant { edges } => {
                let mut g = Array2::<f64>::zeros((n, n));
                for j in 0..n {
                    let h = edges[j + 1] - edges[j];
                    g[[j, j]] = (1.0 / h.sqrt()).powi(2) * h;
                }
                Ok(g)
            }
            Repr::Fourier => {
                let mut g = Array2::<f64>::zeros((n, n));
                for j in 0..n {
                    g[[j, j]] = if j == 0 { 1.0 } else { SQRT_2 * SQRT_2 * 0.5 };
                }
                Ok(g)
            }
            Repr::Spline { .. } => {
                let mut g = Array2::<f64>::zeros((n, n));
                for i in 0..n {
                    let ei = self.element(i).expect("spline element");
                    for j in i..n {
                        let ej = self.element(j).expect("spline element");
                        let v = exact_poly_inner_product(&ei, &ej)?;
                        g[[i, j]] = v;
                        g[[j, i]] = v;
                    }
                }
                Ok(g)
            }
        }
    }

    /// Element `index` as a piecewise polynomial (not available for Fourier).
    pub fn element(&self, index: usize) -> Option<BasisElement<'_>> {
        if index >= self.size || matches!(self.repr, Repr::Fourier) {
            return None;
        }
        Some(BasisElement { basis: self, index })
    }
}

fn interval_of(edges: &[f64], t: f64) -> usize {
    let last = edges.len() - 2;
    (edges.partition_point(|&e| e <= t).max(1) - 1).min(last)
}

fn fourier(j: usize, t: f64) -> f64 {
    if j == 0 {
        1.0
    } else if j % 2 == 1 {
        SQRT_2 * (2.0 * PI * j.div_ceil(2) as f64 * t).sin()
    } else {
        SQRT_2 * (2.0 * PI * (j / 2) as f64 * t).cos()
    }
}

/// One element of a piecewise-constant or spline basis.
pub struct BasisElement<'a> {
    basis: &'a OrthoBasis,
    index: usize,
}

impl PiecewisePolynomial for BasisElement<'_> {
    fn degree(&self) -> usize {
        self.basis.degree
    }

    fn breakpoints(&self) -> Vec<f64> {
        match &self.basis.repr {
            Repr::PiecewiseConstant { edges } => vec![edges[self.index], edges[self.index + 1]],
            Repr::Spline { family, layout, .. } => {
                let e = layout[self.index];
                let k = family.degree();
                let mut b = family.extended_knots()[e.first..=e.end + k].to_vec();
                b.dedup();
                b
            }
            Repr::Fourier => vec![0.0, 1.0],
        }
    }

    fn eval(&self, t: f64) -> f64 {
        match &self.basis.repr {
            Repr::PiecewiseConstant { edges } => {
                let (a, b) = (edges[self.index], edges[self.index + 1]);
                if t >= a && t < b || (t == b && b == 1.0) {
                    1.0 / (b - a).sqrt()
                } else {
                    0.0
                }
            }
            Repr::Spline { family, coefs, .. } => {
                if !(0.0..=1.0).contains(&t) {
                    return 0.0;
                }
                let k = family.degree();
                let mut vals = [0.0; crate::fcore::MAX_POLY_DEGREE + 1];
                let mu = family.nonzero_at(t, &mut vals[..=k]);
                (0..=k)
                    .map(|r| vals[r] * coefs[[mu - k + r, self.index]])
                    .sum()
            }
            Repr::Fourier => fourier(self.index, t),
        }
    }
}

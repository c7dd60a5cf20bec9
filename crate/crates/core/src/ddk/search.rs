//! Greedy split search for piecewise-constant fits on a grid.

use crate::bases::KnotSet;
use crate::error::{Error, Result};
use crate::fcore::FunctionalDataset;

/// Candidates whose post-insertion AMSE is within this fraction of the data's
/// mean squared norm of the best one count as ties.
pub(crate) const TIE_RELATIVE: f64 = 1e-12;

/// Cumulative sums that give the least-squares error of a constant fit on any
/// run of grid points in O(n).
pub(crate) struct PrefixSums {
    n: usize,
    /// `(m+1) × n`, row `j` holds `Σ_{l<j} w_l x_il` for every curve.
    weighted: Vec<f64>,
    /// `Σ_{l<j} w_l Σ_i x_il²`.
    squares: Vec<f64>,
    /// `Σ_{l<j} w_l`.
    mass: Vec<f64>,
}

impl PrefixSums {
    pub fn new(ds: &FunctionalDataset) -> Self {
        let n = ds.n_curves();
        let m = ds.grid_len();
        let w = ds.grid().weights();
        let x = ds.values();
        let mut weighted = vec![0.0; (m + 1) * n];
        let mut squares = vec![0.0; m + 1];
        let mut mass = vec![0.0; m + 1];
        for j in 0..m {
            let mut sq = 0.0;
            for i in 0..n {
                let v = x[[i, j]];
                weighted[(j + 1) * n + i] = weighted[j * n + i] + w[j] * v;
                sq += v * v;
            }
            squares[j + 1] = squares[j] + w[j] * sq;
            mass[j + 1] = mass[j] + w[j];
        }
        Self {
            n,
            weighted,
            squares,
            mass,
        }
    }

    /// Summed squared error of the best constant on grid indices `p..q`.
    pub fn sse(&self, p: usize, q: usize) -> f64 {
        if q <= p {
            return 0.0;
        }
        let h = self.mass[q] - self.mass[p];
        let (a, b) = (
            &self.weighted[p * self.n..(p + 1) * self.n],
            &self.weighted[q * self.n..(q + 1) * self.n],
        );
        let fitted: f64 = a.iter().zip(b).map(|(u, v)| (v - u) * (v - u)).sum::<f64>() / h;
        ((self.squares[q] - self.squares[p]) - fitted).max(0.0)
    }

    pub fn total_squares(&self) -> f64 {
        *self.squares.last().expect("nonempty")
    }
}

/// A run of grid indices `p..q` between consecutive knots.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Cell {
    pub p: usize,
    pub q: usize,
    pub sse: f64,
    /// Smallest change in SSE from one split and the first index attaining it.
    pub best: Option<(f64, usize)>,
}

pub(crate) struct SplitSearch<'a> {
    pub sums: PrefixSums,
    points: &'a [f64],
    pub cells: Vec<Cell>,
    pub total_sse: f64,
    tol: f64,
}

impl<'a> SplitSearch<'a> {
    pub fn new(train: &'a FunctionalDataset, knots: &KnotSet) -> Self {
        let sums = PrefixSums::new(train);
        let points = train.grid().points();
        let scale = sums.total_squares();
        let tol = TIE_RELATIVE * scale.max(f64::MIN_POSITIVE);
        let mut bounds = vec![0];
        bounds.extend(
            knots
                .as_slice()
                .iter()
                .map(|&k| train.grid().first_at_or_after(k)),
        );
        bounds.push(points.len());
        let mut search = Self {
            sums,
            points,
            cells: Vec::with_capacity(bounds.len() - 1),
            total_sse: 0.0,
            tol,
        };
        for w in bounds.windows(2) {
            let cell = search.make_cell(w[0], w[1]);
            search.total_sse += cell.sse;
            search.cells.push(cell);
        }
        search
    }

    fn admissible(&self, j: usize) -> bool {
        let t = self.points[j];
        t > 0.0 && t < 1.0
    }

    fn split_delta(&self, cell: &Cell, j: usize) -> f64 {
        self.sums.sse(cell.p, j) + self.sums.sse(j, cell.q) - cell.sse
    }

    fn make_cell(&self, p: usize, q: usize) -> Cell {
        let mut cell = Cell {
            p,
            q,
            sse: self.sums.sse(p, q),
            best: None,
        };
        let mut min = f64::INFINITY;
        for j in (p + 1)..q {
            if self.admissible(j) {
                min = min.min(self.split_delta(&cell, j));
            }
        }
        if min.is_finite() {
            let first = ((p + 1)..q)
                .find(|&j| self.admissible(j) && self.split_delta(&cell, j) <= min + self.tol)
                .expect("minimum is attained");
            cell.best = Some((min, first));
        }
        cell
    }

    /// Best insertion: `(cell index, grid index, delta)`, smallest grid point
    /// among near-ties.
    pub fn best(&self) -> Option<(usize, usize, f64)> {
        let global = self
            .cells
            .iter()
            .filter_map(|c| c.best.map(|b| b.0))
            .fold(f64::INFINITY, f64::min);
        if !global.is_finite() {
            return None;
        }
        let (ci, cell) = self
            .cells
            .iter()
            .enumerate()
            .find(|(_, c)| c.best.is_some_and(|b| b.0 <= global + self.tol))?;
        let j = ((cell.p + 1)..cell.q)
            .find(|&j| self.admissible(j) && self.split_delta(cell, j) <= global + self.tol)
            .expect("cell attains the global minimum");
        Some((ci, j, self.split_delta(cell, j)))
    }

    /// Replaces cell `ci` by its two halves at grid index `j`.
    pub fn insert(&mut self, ci: usize, j: usize) {
        let old = self.cells[ci];
        let left = self.make_cell(old.p, j);
        let right = self.make_cell(j, old.q);
        self.total_sse += left.sse + right.sse - old.sse;
        self.cells.splice(ci..=ci, [left, right]);
    }

    pub fn point(&self, j: usize) -> f64 {
        self.points[j]
    }
}

/// Grid point whose insertion as a knot minimizes the training AMSE of the
/// piecewise-constant fit, together with that AMSE.
pub fn best_split(train: &FunctionalDataset, knots: &KnotSet) -> Result<(f64, f64)> {
    let search = SplitSearch::new(train, knots);
    let (_, j, delta) = search.best().ok_or(Error::Saturated)?;
    let amse = ((search.total_sse + delta) / train.n_curves() as f64).max(0.0);
    Ok((search.point(j), amse))
}

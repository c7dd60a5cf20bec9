//! Dense symmetric linear algebra: cyclic Jacobi eigensolver and Cholesky.

use crate::error::{Error, Result};
use ndarray::{Array1, Array2};

const MAX_SWEEPS: usize = 60;

/// Eigen-decomposition of a real symmetric matrix.
///
/// `values` are sorted nonincreasing and `vectors` holds the matching
/// orthonormal eigenvectors as columns, so `M = V diag(values) V^T`.
#[derive(Clone, Debug)]
pub struct SymmetricEigen {
    pub values: Array1<f64>,
    pub vectors: Array2<f64>,
}

pub fn max_abs(m: &Array2<f64>) -> f64 {
    m.iter().fold(0.0_f64, |acc, v| acc.max(v.abs()))
}

/// Cyclic Jacobi eigendecomposition.
///
/// Sweeps over all off-diagonal pairs until the largest off-diagonal entry
/// drops below `1e-12 * ||M||_F`. The input must be symmetric within
/// `1e-9 * max(1, max|M_ij|)`.
pub fn eig_sym(m: &Array2<f64>) -> Result<SymmetricEigen> {
    let (rows, cols) = m.dim();
    if rows != cols {
        return Err(Error::Dimension(format!(
            "eigensolver needs a square matrix, got {rows}x{cols}"
        )));
    }
    let n = rows;
    let scale = max_abs(m).max(1.0);
    for i in 0..n {
        for j in (i + 1)..n {
            if (m[[i, j]] - m[[j, i]]).abs() > 1e-9 * scale {
                return Err(Error::Contract(format!(
                    "matrix is not symmetric: |M[{i},{j}] - M[{j},{i}]| = {:e}",
                    (m[[i, j]] - m[[j, i]]).abs()
                )));
            }
        }
    }

    // Row-major working copy, symmetrized.
    let mut a = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            a[i * n + j] = 0.5 * (m[[i, j]] + m[[j, i]]);
        }
    }
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }

    let frob = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let target = 1e-12 * frob;
    let mut converged = frob == 0.0 || n < 2;
    let mut sweep = 0;
    while !converged {
        if sweep == MAX_SWEEPS {
            return Err(Error::NoConvergence(MAX_SWEEPS));
        }
        sweep += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq.abs() <= 1e-3 * target {
                    continue;
                }
                rotate(&mut a, &mut v, n, p, q);
            }
        }
        let mut off = 0.0_f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off = off.max(a[p * n + q].abs());
            }
        }
        converged = off < target;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[j * n + j].total_cmp(&a[i * n + i]));
    let values = Array1::from_iter(order.iter().map(|&i| a[i * n + i]));
    let mut vectors = Array2::zeros((n, n));
    for (col, &src) in order.iter().enumerate() {
        for r in 0..n {
            vectors[[r, col]] = v[r * n + src];
        }
    }
    Ok(SymmetricEigen { values, vectors })
}

fn rotate(a: &mut [f64], v: &mut [f64], n: usize, p: usize, q: usize) {
    let apq = a[p * n + q];
    let app = a[p * n + p];
    let aqq = a[q * n + q];
    let theta = (aqq - app) / (2.0 * apq);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let tau = s / (1.0 + c);

    a[p * n + p] = app - t * apq;
    a[q * n + q] = aqq + t * apq;
    a[p * n + q] = 0.0;
    a[q * n + p] = 0.0;
    for r in 0..n {
        if r == p || r == q {
            continue;
        }
        let g = a[r * n + p];
        let h = a[r * n + q];
        let gp = g - s * (h + g * tau);
        let hq = h + s * (g - h * tau);
        a[r * n + p] = gp;
        a[p * n + r] = gp;
        a[r * n + q] = hq;
        a[q * n + r] = hq;
    }
    for r in 0..n {
        let g = v[r * n + p];
        let h = v[r * n + q];
        v[r * n + p] = g - s * (h + g * tau);
        v[r * n + q] = h + s * (g - h * tau);
    }
}

/// Lower Cholesky factor of a symmetric positive definite matrix, or `None`
/// when a pivot is not strictly positive.
pub fn cholesky(m: &Array2<f64>) -> Option<Array2<f64>> {
    let n = m.nrows();
    let mut l = Array2::<f64>::zeros((n, n));
    for j in 0..n {
        let mut d = m[[j, j]];
        for k in 0..j {
            d -= l[[j, k]] * l[[j, k]];
        }
        if !(d > 0.0) {
            return None;
        }
        let d = d.sqrt();
        l[[j, j]] = d;
        for i in (j + 1)..n {
            let mut s = m[[i, j]];
            for k in 0..j {
                s -= l[[i, k]] * l[[j, k]];
            }
            l[[i, j]] = s / d;
        }
    }
    Some(l)
}

/// Cholesky with escalating diagonal jitter: `start, 10*start, ...` up to `max`.
///
/// Returns the factor together with the jitter that was needed (0 if none).
pub fn cholesky_jittered(m: &Array2<f64>, start: f64, max: f64) -> Result<(Array2<f64>, f64)> {
    if let Some(l) = cholesky(m) {
        return Ok((l, 0.0));
    }
    let mut jitter = start;
    while jitter <= max * (1.0 + 1e-9) {
        let mut shifted = m.clone();
        for i in 0..m.nrows() {
            shifted[[i, i]] += jitter;
        }
        if let Some(l) = cholesky(&shifted) {
            return Ok((l, jitter));
        }
        jitter *= 10.0;
    }
    Err(Error::NotPsd { jitter: max })
}

/// Solves `G X^T = B^T` for every row of `b`, i.e. returns `B G^{-1}` for a
/// symmetric positive (semi)definite `G`.
///
/// Uses Cholesky; falls back to an eigenvalue pseudo-inverse (relative cutoff
/// 1e-12) when `G` is numerically singular.
pub fn right_solve_spd(b: &Array2<f64>, g: &Array2<f64>) -> Result<Array2<f64>> {
    let n = g.nrows();
    if b.ncols() != n {
        return Err(Error::Dimension(format!(
            "right-hand side has {} columns, system has {n}",
            b.ncols()
        )));
    }
    if let Some(l) = cholesky(g) {
        let mut out = b.clone();
        for mut row in out.rows_mut() {
            // forward: L y = b
            for i in 0..n {
                let mut s = row[i];
                for k in 0..i {
                    s -= l[[i, k]] * row[k];
                }
                row[i] = s / l[[i, i]];
            }
            // backward: L^T x = y
            for i in (0..n).rev() {
                let mut s = row[i];
                for k in (i + 1)..n {
                    s -= l[[k, i]] * row[k];
                }
                row[i] = s / l[[i, i]];
            }
        }
        return Ok(out);
    }
    let eig = eig_sym(g)?;
    let cutoff = 1e-12 * eig.values.iter().fold(0.0_f64, |a, v| a.max(v.abs()));
    let mut pinv = Array2::<f64>::zeros((n, n));
    for k in 0..n {
        let lam = eig.values[k];
        if lam <= cutoff {
            continue;
        }
        let col = eig.vectors.column(k);
        for i in 0..n {
            for j in 0..n {
                pinv[[i, j]] += col[i] * col[j] / lam;
            }
        }
    }
    Ok(b.dot(&pinv))
}

/// `S^{-1/2}` for a symmetric positive definite `S` (symmetric square root).
pub fn inverse_sqrt_spd(s: &Array2<f64>) -> Result<Array2<f64>> {
    let eig = eig_sym(s)?;
    let n = s.nrows();
    if let Some(&min) = eig.values.iter().last() {
        if !(min > 0.0) {
            return Err(Error::Contract(format!(
                "overlap matrix is not positive definite (smallest eigenvalue {min:e})"
            )));
        }
    }
    let mut out = Array2::<f64>::zeros((n, n));
    for k in 0..n {
        let w = 1.0 / eig.values[k].sqrt();
        let col = eig.vectors.column(k);
        for i in 0..n {
            for j in 0..n {
                out[[i, j]] += w * col[i] * col[j];
            }
        }
    }
    Ok(out)
}

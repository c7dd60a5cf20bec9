use crate::error::{Error, Result};
use ndarray::{Array1, Array2, Axis};

/// Sample covariance of basis coefficients.
#[derive(Clone, Debug)]
pub struct CoefCovariance {
    pub matrix: Array2<f64>,
    pub centered: bool,
    /// Column means (zero when not centered).
    pub mean_coefs: Array1<f64>,
}

/// Covariance of the rows of `coefs`.
///
/// Centered estimates subtract the column means and divide by `n − 1`.
/// Uncentered estimates treat the mean as known to be zero and divide by `n`;
/// both are unbiased under their assumptions.
pub fn estimate_covariance(coefs: &Array2<f64>, center: bool) -> Result<CoefCovariance> {
    let n = coefs.nrows();
    if n < 2 {
        return Err(Error::TooFewCurves {
            required: 2,
            got: n,
        });
    }
    let p = coefs.ncols();
    let mean = if center {
        coefs.mean_axis(Axis(0)).expect("n >= 2")
    } else {
        Array1::zeros(p)
    };
    let centered = coefs - &mean.view().insert_axis(Axis(0));
    let divisor = if center { (n - 1) as f64 } else { n as f64 };
    let mut matrix = centered.t().dot(&centered) / divisor;
    // exact symmetry
    for i in 0..p {
        for j in 0..i {
            let v = 0.5 * (matrix[[i, j]] + matrix[[j, i]]);
            matrix[[i, j]] = v;
            matrix[[j, i]] = v;
        }
    }
    Ok(CoefCovariance {
        matrix,
        centered: center,
        mean_coefs: mean,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    #[test]
    fn identical_rows_give_zero() {
        let c = estimate_covariance(&array![[1.0, 2.0, 3.0], [1.0, 2.0, 3.0]], true).unwrap();
        assert!(c.matrix.iter().all(|&v| v == 0.0));
        assert_eq!(c.mean_coefs, array![1.0, 2.0, 3.0]);
    }

    #[test]
    fn divisors() {
        let x = array![[1.0], [-1.0], [3.0]];
        let centered = estimate_covariance(&x, true).unwrap();
        assert!((centered.matrix[[0, 0]] - 4.0).abs() < 1e-14);
        let raw = estimate_covariance(&x, false).unwrap();
        assert!((raw.matrix[[0, 0]] - 11.0 / 3.0).abs() < 1e-14);
        assert!(estimate_covariance(&array![[1.0]], true).is_err());
    }
}

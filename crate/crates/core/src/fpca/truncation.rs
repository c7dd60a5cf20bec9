use crate::error::{Error, Result};
use ndarray::Array2;

/// Expected squared error of representing `Σ_k √λ_k Z_k Σ_i a_ki f_i` in the
/// span of the kept elements: `Σ_k λ_k Σ_{i∉kept} a_ki²`. Indices are 0-based.
pub fn truncation_error(a: &Array2<f64>, lambda: &[f64], kept: &[usize]) -> Result<f64> {
    let (k, i) = a.dim();
    if lambda.len() != k {
        return Err(Error::Dimension(format!(
            "{} eigenvalues for {k} rows",
            lambda.len()
        )));
    }
    if let Some(&bad) = kept.iter().find(|&&j| j >= i) {
        return Err(Error::Range(format!("kept index {bad} outside 0..{i}")));
    }
    let gram = a.dot(&a.t());
    for r in 0..k {
        for c in 0..k {
            let want = if r == c { 1.0 } else { 0.0 };
            if (gram[[r, c]] - want).abs() > 1e-9 {
                return Err(Error::Contract(
                    "rows of the mixing matrix are not orthonormal".into(),
                ));
            }
        }
    }
    let mut dropped = vec![true; i];
    for &j in kept {
        dropped[j] = false;
    }
    Ok((0..k)
        .map(|r| {
            lambda[r]
                * (0..i)
                    .filter(|&j| dropped[j])
                    .map(|j| a[[r, j]] * a[[r, j]])
                    .sum::<f64>()
        })
        .sum())
}

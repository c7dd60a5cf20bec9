//! B-splines on extended knot sequences (Cox-de Boor recursion).

use super::knots::KnotSet;
use crate::error::{Error, Result};
use crate::fcore::{PiecewisePolynomial, QuadratureRule, MAX_POLY_DEGREE};
use ndarray::Array2;

/// Value of `B_{i,k}(t)` on the extended sequence `ext`.
///
/// Degree-0 pieces are half-open `[ξ_i, ξ_{i+1})`, except that the last
/// nonempty interval also contains its right end, so the family is a partition
/// of unity on the closed span. Terms with a zero denominator vanish.
pub fn eval_bspline(ext: &[f64], degree: usize, index: usize, t: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::Domain(t));
    }
    if ext.len() < degree + 2 || index > ext.len() - degree - 2 {
        return Err(Error::Range(format!(
            "B-spline index {index} invalid for {} knots of degree {degree}",
            ext.len()
        )));
    }
    if ext.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::InvalidKnots(
            "extended knot sequence must be nondecreasing".into(),
        ));
    }
    Ok(cox_de_boor(ext, degree, index, t))
}

fn cox_de_boor(ext: &[f64], degree: usize, index: usize, t: f64) -> f64 {
    let last = *ext.last().expect("nonempty knot sequence");
    let mut n: Vec<f64> = (0..=degree)
        .map(|j| {
            let (a, b) = (ext[index + j], ext[index + j + 1]);
            let inside = a <= t && t < b;
            let closing = t == last && b == last && a < b;
            if inside || closing {
                1.0
            } else {
                0.0
            }
        })
        .collect();
    for k in 1..=degree {
        for j in 0..=(degree - k) {
            let i = index + j;
            let left = {
                let d = ext[i + k] - ext[i];
                if d > 0.0 {
                    (t - ext[i]) / d * n[j]
                } else {
                    0.0
                }
            };
            let right = {
                let d = ext[i + k + 1] - ext[i + 1];
                if d > 0.0 {
                    (ext[i + k + 1] - t) / d * n[j + 1]
                } else {
                    0.0
                }
            };
            n[j] = left + right;
        }
    }
    n[0]
}

/// B-spline family of a given degree on a clamped knot sequence.
#[derive(Clone, Debug)]
pub struct BsplineFamily {
    knots: KnotSet,
    degree: usize,
    ext: Vec<f64>,
}

impl BsplineFamily {
    pub fn new(knots: KnotSet, degree: usize) -> Result<Self> {
        if 2 * degree > MAX_POLY_DEGREE {
            return Err(Error::UnsupportedDegree {
                degree,
                max: MAX_POLY_DEGREE / 2,
            });
        }
        let ext = knots.extended(degree);
        Ok(Self { knots, degree, ext })
    }

    pub fn knots(&self) -> &KnotSet {
        &self.knots
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn extended_knots(&self) -> &[f64] {
        &self.ext
    }

    /// Number of B-splines: `#internal + degree + 1`.
    pub fn len(&self) -> usize {
        self.ext.len() - self.degree - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn eval(&self, index: usize, t: f64) -> Result<f64> {
        eval_bspline(&self.ext, self.degree, index, t)
    }

    /// Index `μ` with `ξ_μ <= t < ξ_{μ+1}`, clamped to the last nonempty interval.
    pub fn span(&self, t: f64) -> usize {
        let n = self.len();
        let k = self.degree;
        if t >= self.ext[n] {
            return n - 1;
        }
        if t <= self.ext[k] {
            return k;
        }
        // largest μ in [k, n-1] with ext[μ] <= t
        k + self.ext[k..n].partition_point(|&x| x <= t) - 1
    }

    /// The `degree + 1` possibly nonzero B-splines at `t`: returns `μ` and the
    /// values of `B_{μ-k}, ..., B_μ`.
    pub fn nonzero_at(&self, t: f64, out: &mut [f64]) -> usize {
        let k = self.degree;
        debug_assert_eq!(out.len(), k + 1);
        let mu = self.span(t);
        let ext = &self.ext;
        let mut left = [0.0; MAX_POLY_DEGREE + 1];
        let mut right = [0.0; MAX_POLY_DEGREE + 1];
        out[0] = 1.0;
        for j in 1..=k {
            left[j] = t - ext[mu + 1 - j];
            right[j] = ext[mu + j] - t;
            let mut saved = 0.0;
            for r in 0..j {
                let denom = right[r + 1] + left[j - r];
                let temp = if denom != 0.0 { out[r] / denom } else { 0.0 };
                out[r] = saved + right[r + 1] * temp;
                saved = left[j - r] * temp;
            }
            out[j] = saved;
        }
        mu
    }

    /// Exact Gram matrix `∫ B_i B_j`, integrating every knot interval with
    /// `degree + 1` Gauss-Legendre nodes.
    pub fn gram(&self) -> Array2<f64> {
        let n = self.len();
        let k = self.degree;
        let mut g = Array2::<f64>::zeros((n, n));
        let rule = QuadratureRule::gauss_legendre(k + 1);
        let mut vals = vec![0.0; k + 1];
        for mu in k..n {
            let (a, b) = (self.ext[mu], self.ext[mu + 1]);
            if b <= a {
                continue;
            }
            let q = rule.mapped(a, b);
            for (&x, &w) in q.nodes.iter().zip(&q.weights) {
                let span = self.nonzero_at(x, &mut vals);
                debug_assert_eq!(span, mu);
                for r in 0..=k {
                    for s in 0..=k {
                        g[[mu - k + r, mu - k + s]] += w * vals[r] * vals[s];
                    }
                }
            }
        }
        g
    }

    /// Design matrix `B_j(t_i)` (rows: points, columns: B-splines).
    pub fn design(&self, points: &[f64]) -> Array2<f64> {
        let k = self.degree;
        let mut d = Array2::<f64>::zeros((points.len(), self.len()));
        let mut vals = vec![0.0; k + 1];
        for (i, &t) in points.iter().enumerate() {
            let mu = self.nonzero_at(t, &mut vals);
            for r in 0..=k {
                d[[i, mu - k + r]] = vals[r];
            }
        }
        d
    }

    pub fn element(&self, index: usize) -> BsplineElement<'_> {
        BsplineElement {
            family: self,
            index,
        }
    }
}

/// One B-spline viewed as a piecewise polynomial.
pub struct BsplineElement<'a> {
    family: &'a BsplineFamily,
    index: usize,
}

impl PiecewisePolynomial for BsplineElement<'_> {
    fn degree(&self) -> usize {
        self.family.degree
    }

    fn breakpoints(&self) -> Vec<f64> {
        let k = self.family.degree;
        let mut b = self.family.ext[self.index..=self.index + k + 1].to_vec();
        b.dedup();
        b
    }

    fn eval(&self, t: f64) -> f64 {
        if !(0.0..=1.0).contains(&t) {
            return 0.0;
        }
        cox_de_boor(&self.family.ext, self.family.degree, self.index, t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fcore::exact_poly_inner_product;
    use crate::rng::Rng;

    #[test]
    fn degree_zero_indicator() {
        assert_eq!(eval_bspline(&[0.0, 0.5, 1.0], 0, 0, 0.25).unwrap(), 1.0);
        assert_eq!(eval_bspline(&[0.0, 0.5, 1.0], 0, 0, 0.75).unwrap(), 0.0);
        assert_eq!(eval_bspline(&[0.0, 0.5, 1.0], 0, 1, 1.0).unwrap(), 1.0);
    }

    #[test]
    fn linear_partition_at_knot() {
        let ext = [0.0, 0.0, 0.5, 1.0, 1.0];
        let s: f64 = (0..3).map(|i| eval_bspline(&ext, 1, i, 0.5).unwrap()).sum();
        assert!((s - 1.0).abs() < 1e-15);
    }

    #[test]
    fn cubic_nonnegative() {
        let ext: Vec<f64> = (0..=10).map(|j| j as f64 / 10.0).collect();
        let mut rng = Rng::new(5);
        for _ in 0..10_000 {
            let t = rng.uniform();
            for i in 0..=(ext.len() - 5) {
                assert!(eval_bspline(&ext, 3, i, t).unwrap() >= 0.0);
            }
        }
    }

    #[test]
    fn domain_and_index_errors() {
        let ext = [0.0, 0.5, 1.0];
        assert!(matches!(
            eval_bspline(&ext, 0, 0, 1.5),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            eval_bspline(&ext, 0, 2, 0.5),
            Err(Error::Range(_))
        ));
    }

    #[test]
    fn nonzero_matches_recursion() {
        let fam =
            BsplineFamily::new(KnotSet::new(vec![0.1, 0.15, 0.6, 0.61, 0.9]).unwrap(), 3).unwrap();
        let mut vals = vec![0.0; 4];
        for &t in &[0.0, 0.05, 0.1, 0.33, 0.605, 0.95, 1.0] {
            let mu = fam.nonzero_at(t, &mut vals);
            for i in 0..fam.len() {
                let direct = fam.eval(i, t).unwrap();
                let fast = if i + 3 >= mu && i <= mu {
                    vals[i + 3 - mu]
                } else {
                    0.0
                };
                assert!(
                    (direct - fast).abs() < 1e-14,
                    "t={t} i={i}: {direct} vs {fast}"
                );
            }
        }
    }

    #[test]
    fn gram_matches_piecewise_integration() {
        let fam = BsplineFamily::new(KnotSet::new(vec![0.2, 0.45, 0.5, 0.8]).unwrap(), 3).unwrap();
        let g = fam.gram();
        for i in 0..fam.len() {
            for j in 0..fam.len() {
                let v = exact_poly_inner_product(&fam.element(i), &fam.element(j)).unwrap();
                assert!(
                    (g[[i, j]] - v).abs() < 1e-14,
                    "({i},{j}): {} vs {v}",
                    g[[i, j]]
                );
            }
        }
        // disjoint supports
        assert_eq!(g[[0, 6]], 0.0);
    }

    #[test]
    fn count_is_clamped() {
        let fam = BsplineFamily::new(KnotSet::new(vec![0.3, 0.6]).unwrap(), 3).unwrap();
        assert_eq!(fam.len(), 6);
    }
}

//! Exact inner products of piecewise polynomials.

use super::quadrature::QuadratureRule;
use crate::error::{Error, Result};

pub const MAX_POLY_DEGREE: usize = 10;

/// A function on `[0, 1]` that is a polynomial of degree at most
/// [`degree`](PiecewisePolynomial::degree) between consecutive breakpoints.
pub trait PiecewisePolynomial {
    fn degree(&self) -> usize;
    /// Sorted breakpoints, including the ends of the support.
    fn breakpoints(&self) -> Vec<f64>;
    /// Value at `t`; only evaluated strictly inside pieces.
    fn eval(&self, t: f64) -> f64;
}

/// Piecewise polynomial in local monomial form: on `[b_j, b_{j+1})` the value is
/// `Σ_k coefs[j][k] (t - b_j)^k`; zero outside `[b_0, b_last]`.
#[derive(Clone, Debug)]
pub struct PiecewisePoly {
    breaks: Vec<f64>,
    coefs: Vec<Vec<f64>>,
}

impl PiecewisePoly {
    pub fn new(breaks: Vec<f64>, coefs: Vec<Vec<f64>>) -> Result<Self> {
        if breaks.len() < 2 || coefs.len() != breaks.len() - 1 {
            return Err(Error::Dimension(format!(
                "{} breakpoints need {} coefficient rows, got {}",
                breaks.len(),
                breaks.len().saturating_sub(1),
                coefs.len()
            )));
        }
        if breaks.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidKnots(
                "breakpoints must increase strictly".into(),
            ));
        }
        Ok(Self { breaks, coefs })
    }

    /// A single polynomial (ascending monomial coefficients) on `[0, 1]`.
    pub fn polynomial(coefs: Vec<f64>) -> Self {
        Self {
            breaks: vec![0.0, 1.0],
            coefs: vec![coefs],
        }
    }
}

impl PiecewisePolynomial for PiecewisePoly {
    fn degree(&self) -> usize {
        self.coefs
            .iter()
            .map(|c| c.iter().rposition(|&v| v != 0.0).unwrap_or(0))
            .max()
            .unwrap_or(0)
    }

    fn breakpoints(&self) -> Vec<f64> {
        self.breaks.clone()
    }

    fn eval(&self, t: f64) -> f64 {
        let last = self.breaks.len() - 1;
        if t < self.breaks[0] || t > self.breaks[last] {
            return 0.0;
        }
        let j = (self.breaks.partition_point(|&b| b <= t).max(1) - 1).min(last - 1);
        let x = t - self.breaks[j];
        self.coefs[j].iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }
}

/// `∫ p q` computed exactly with Gauss-Legendre on every piece of the common
/// refinement of the breakpoints, using `⌈(deg p + deg q + 1)/2⌉` nodes.
pub fn exact_poly_inner_product<P, Q>(p: &P, q: &Q) -> Result<f64>
where
    P: PiecewisePolynomial + ?Sized,
    Q: PiecewisePolynomial + ?Sized,
{
    let (dp, dq) = (p.degree(), q.degree());
    for d in [dp, dq] {
        if d > MAX_POLY_DEGREE {
            return Err(Error::UnsupportedDegree {
                degree: d,
                max: MAX_POLY_DEGREE,
            });
        }
    }
    let bp = p.breakpoints();
    let bq = q.breakpoints();
    let (Some(&p0), Some(&p1), Some(&q0), Some(&q1)) =
        (bp.first(), bp.last(), bq.first(), bq.last())
    else {
        return Ok(0.0);
    };
    let lo = p0.max(q0);
    let hi = p1.min(q1);
    if hi <= lo {
        return Ok(0.0);
    }
    let mut cuts: Vec<f64> = bp
        .iter()
        .chain(&bq)
        .copied()
        .filter(|&b| b >= lo && b <= hi)
        .collect();
    cuts.push(lo);
    cuts.push(hi);
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();

    let rule = QuadratureRule::gauss_legendre((dp + dq + 2) / 2);
    let mut total = 0.0;
    for w in cuts.windows(2) {
        let piece = rule.mapped(w[0], w[1]);
        total += piece.integrate(|t| p.eval(t) * q.eval(t));
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants_and_monomials() {
        let one = PiecewisePoly::polynomial(vec![1.0]);
        assert_eq!(exact_poly_inner_product(&one, &one).unwrap(), 1.0);
        let t = PiecewisePoly::polynomial(vec![0.0, 1.0]);
        let v = exact_poly_inner_product(&t, &t).unwrap();
        assert!((v - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn disjoint_supports_vanish() {
        let a = PiecewisePoly::new(vec![0.0, 0.3], vec![vec![1.0, 2.0, 0.0, 1.0]]).unwrap();
        let b = PiecewisePoly::new(vec![0.5, 0.9], vec![vec![0.0, 1.0, 1.0, 1.0]]).unwrap();
        assert_eq!(exact_poly_inner_product(&a, &b).unwrap(), 0.0);
    }

    #[test]
    fn piecewise_refinement() {
        // p = |t - 0.5|, q = 0.5 - t split at a different breakpoint
        let p =
            PiecewisePoly::new(vec![0.0, 0.5, 1.0], vec![vec![0.5, -1.0], vec![0.0, 1.0]]).unwrap();
        let q = PiecewisePoly::new(
            vec![0.0, 0.25, 1.0],
            vec![vec![0.5, -1.0], vec![0.25, -1.0]],
        )
        .unwrap();
        let v = exact_poly_inner_product(&p, &q).unwrap();
        assert!(v.abs() < 1e-15, "{v}");
        let pp = exact_poly_inner_product(&p, &p).unwrap();
        assert!((pp - 1.0 / 12.0).abs() < 1e-15);
    }

    #[test]
    fn degree_cap() {
        let mut c = vec![0.0; 12];
        c[11] = 1.0;
        let p = PiecewisePoly::polynomial(c);
        let one = PiecewisePoly::polynomial(vec![1.0]);
        assert!(matches!(
            exact_poly_inner_product(&p, &one),
            Err(Error::UnsupportedDegree { degree: 11, .. })
        ));
    }
}

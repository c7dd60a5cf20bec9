use crate::error::{Error, Result};

const DUP_TOL: f64 = 1e-12;

/// Simple interior knots in `(0, 1)`; the boundary knots 0 and 1 are implicit.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct KnotSet {
    internal: Vec<f64>,
}

impl KnotSet {
    pub fn new(mut internal: Vec<f64>) -> Result<Self> {
        if let Some(&bad) = internal.iter().find(|&&t| !(t > 0.0 && t < 1.0)) {
            return Err(Error::InvalidKnots(format!(
                "knot {bad} is not inside the open unit interval"
            )));
        }
        internal.sort_by(f64::total_cmp);
        if let Some(w) = internal.windows(2).find(|w| w[1] - w[0] <= DUP_TOL) {
            return Err(Error::InvalidKnots(format!("duplicate knot near {}", w[0])));
        }
        Ok(Self { internal })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// `count` knots at `j/(count+1)`.
    pub fn equispaced(count: usize) -> Self {
        let h = 1.0 / (count + 1) as f64;
        Self {
            internal: (1..=count).map(|j| j as f64 * h).collect(),
        }
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.internal
    }

    pub fn len(&self) -> usize {
        self.internal.len()
    }

    pub fn is_empty(&self) -> bool {
        self.internal.is_empty()
    }

    pub fn contains(&self, t: f64) -> bool {
        self.internal.iter().any(|&k| (k - t).abs() <= DUP_TOL)
    }

    pub fn insert(&mut self, t: f64) -> Result<()> {
        if !(t > 0.0 && t < 1.0) {
            return Err(Error::InvalidKnots(format!(
                "knot {t} is not inside (0, 1)"
            )));
        }
        if self.contains(t) {
            return Err(Error::InvalidKnots(format!("knot {t} already present")));
        }
        let pos = self.internal.partition_point(|&k| k < t);
        self.internal.insert(pos, t);
        Ok(())
    }

    /// Interval edges `0, ξ_1, ..., ξ_n, 1`.
    pub fn edges(&self) -> Vec<f64> {
        let mut e = Vec::with_capacity(self.len() + 2);
        e.push(0.0);
        e.extend_from_slice(&self.internal);
        e.push(1.0);
        e
    }

    /// Clamped extended sequence: 0 and 1 each repeated `degree + 1` times.
    pub fn extended(&self, degree: usize) -> Vec<f64> {
        let mut e = Vec::with_capacity(self.len() + 2 * degree + 2);
        e.extend(std::iter::repeat_n(0.0, degree + 1));
        e.extend_from_slice(&self.internal);
        e.extend(std::iter::repeat_n(1.0, degree + 1));
        e
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(KnotSet::new(vec![0.0]).is_err());
        assert!(KnotSet::new(vec![1.0]).is_err());
        assert!(KnotSet::new(vec![0.3, 0.3]).is_err());
        assert!(KnotSet::new(vec![0.3, 0.3 + 1e-13]).is_err());
        let k = KnotSet::new(vec![0.7, 0.2]).unwrap();
        assert_eq!(k.as_slice(), &[0.2, 0.7]);
    }

    #[test]
    fn insert_keeps_order() {
        let mut k = KnotSet::equispaced(3);
        k.insert(0.6).unwrap();
        assert_eq!(k.as_slice(), &[0.25, 0.5, 0.6, 0.75]);
        assert!(k.insert(0.5).is_err());
    }

    #[test]
    fn clamped_sequence() {
        let k = KnotSet::new(vec![0.5]).unwrap();
        assert_eq!(k.extended(2), vec![0.0, 0.0, 0.0, 0.5, 1.0, 1.0, 1.0]);
    }
}

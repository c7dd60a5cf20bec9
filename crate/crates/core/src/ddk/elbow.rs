use crate::error::{Error, Result};

/// Index of the point of `(s, v_s)` farthest from the chord joining the first
/// and last points. Only interior indices are considered; ties go to the
/// smallest index.
pub fn elbow_index(trajectory: &[f64]) -> Result<usize> {
    let len = trajectory.len();
    if len < 3 {
        return Err(Error::TooShort(len));
    }
    let (x1, y0, y1) = ((len - 1) as f64, trajectory[0], trajectory[len - 1]);
    let norm = (x1 * x1 + (y1 - y0) * (y1 - y0)).sqrt();
    let dist = |s: usize| ((s as f64) * (y1 - y0) - x1 * (trajectory[s] - y0)).abs() / norm;
    let best = (1..len - 1).map(dist).fold(0.0, f64::max);
    let tol = 1e-12 * best.max(f64::MIN_POSITIVE);
    Ok((1..len - 1)
        .find(|&s| dist(s) >= best - tol)
        .expect("interior exists"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sharp_bend() {
        assert_eq!(elbow_index(&[10.0, 2.0, 1.9, 1.8, 1.7]).unwrap(), 1);
    }

    #[test]
    fn linear_is_degenerate() {
        assert_eq!(elbow_index(&[5.0, 4.0, 3.0, 2.0, 1.0]).unwrap(), 1);
    }

    #[test]
    fn chord_distance_oracle() {
        // chord from (0, 8) to (4, 0): y = 8 - 2s; distances |8 - 2s - v| / √5
        let v = [8.0, 3.0, 0.8, 0.5, 0.0];
        let d: Vec<f64> = (1..4)
            .map(|s| (8.0 - 2.0 * s as f64 - v[s]).abs() / 5f64.sqrt())
            .collect();
        let want = 1 + d
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .unwrap()
            .0;
        assert_eq!(elbow_index(&v).unwrap(), want);
        assert_eq!(want, 2);
    }

    #[test]
    fn too_short() {
        assert!(matches!(elbow_index(&[1.0, 0.5]), Err(Error::TooShort(2))));
    }
}

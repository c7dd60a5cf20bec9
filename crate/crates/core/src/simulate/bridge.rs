use crate::error::{Error, Result};
use crate::fcore::{FunctionalDataset, Grid};
use crate::rng::{derive_seed, Rng};
use ndarray::Array2;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

fn step_of(grid: &Grid) -> Result<f64> {
    grid.uniform_step()
        .ok_or_else(|| Error::Unsupported("bridge sampling needs a uniform grid".into()))
}

/// Brownian bridge values at the grid points and at 1, from `W(t) − t W(1)`.
fn bridge_with_end(grid: &Grid, rng: &mut Rng) -> Result<Vec<f64>> {
    let step = step_of(grid)?;
    let pts = grid.points();
    let mut w = Vec::with_capacity(pts.len() + 1);
    let mut acc = rng.normal() * pts[0].sqrt();
    w.push(acc);
    let sd = step.sqrt();
    for _ in 1..pts.len() {
        acc += sd * rng.normal();
        w.push(acc);
    }
    let tail = (1.0 - pts[pts.len() - 1]).max(0.0);
    let w1 = acc + tail.sqrt() * rng.normal();
    let mut b: Vec<f64> = pts.iter().zip(&w).map(|(&t, &wt)| wt - t * w1).collect();
    if pts[0] == 0.0 {
        b[0] = 0.0;
    }
    if tail == 0.0 {
        *b.last_mut().expect("nonempty") = 0.0;
    }
    b.push(0.0);
    Ok(b)
}

/// Standard Brownian bridge sampled on a uniform grid.
pub fn brownian_bridge(grid: &Grid, seed: u64) -> Result<Vec<f64>> {
    let mut b = bridge_with_end(grid, &mut Rng::new(seed))?;
    b.pop();
    Ok(b)
}

/// Increments `B(t_{j+1}) − B(t_j)` of a bridge, taking `B(t_m) = B(1) = 0`;
/// one per grid point.
pub fn bridge_increments(grid: &Grid, seed: u64) -> Result<Vec<f64>> {
    let b = bridge_with_end(grid, &mut Rng::new(seed))?;
    Ok(b.windows(2).map(|w| w[1] - w[0]).collect())
}

/// Causal filter sampled at `0, step, 2·step, ...`.
#[derive(Clone, Debug, PartialEq)]
pub struct SampledKernel {
    pub step: f64,
    pub values: Vec<f64>,
}

/// Closed-form causal kernels, all integrating to one over `[0, ∞)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum KernelSpec {
    /// Half-normal density with scale `width`.
    Gaussian { width: f64 },
    /// `e^{−s/scale} / scale`.
    Exponential { scale: f64 },
}

impl KernelSpec {
    pub fn value(&self, s: f64) -> f64 {
        match *self {
            KernelSpec::Gaussian { width } => {
                (2.0 / PI).sqrt() / width * (-0.5 * (s / width).powi(2)).exp()
            }
            KernelSpec::Exponential { scale } => (-s / scale).exp() / scale,
        }
    }

    fn reach(&self) -> f64 {
        match *self {
            KernelSpec::Gaussian { width } => 5.0 * width,
            KernelSpec::Exponential { scale } => 20.0 * scale,
        }
    }

    /// Samples the kernel on `step` up to where it is negligible.
    pub fn sample(&self, step: f64) -> Result<SampledKernel> {
        let scale = match *self {
            KernelSpec::Gaussian { width } => width,
            KernelSpec::Exponential { scale } => scale,
        };
        if !(scale > 0.0 && scale.is_finite()) {
            return Err(Error::Config(format!(
                "kernel scale {scale} must be positive"
            )));
        }
        let len = ((self.reach() / step).ceil() as usize).max(1);
        Ok(SampledKernel {
            step,
            values: (0..len).map(|l| self.value(l as f64 * step)).collect(),
        })
    }
}

/// `R_j = Δt Σ_l r_l ΔB_{j−l}`: the kernel convolved with bridge increments.
pub fn filtered_bridge(kernel: &SampledKernel, grid: &Grid, seed: u64) -> Result<Vec<f64>> {
    let step = step_of(grid)?;
    if (kernel.step - step).abs() > 1e-9 * step {
        return Err(Error::Resolution(format!(
            "kernel step {} differs from grid step {step}",
            kernel.step
        )));
    }
    let inc = bridge_increments(grid, seed)?;
    Ok(convolve(&kernel.values, &inc, step))
}

/// Bridge dataset settings: plain bridges, or bridges filtered by `filter`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BridgeSpec {
    pub filter: Option<KernelSpec>,
}

/// `n` bridges (optionally filtered); curve `i` uses seed `derive_seed(seed, i)`.
pub fn bridge_dataset(
    spec: &BridgeSpec,
    n: usize,
    grid: &Grid,
    seed: u64,
) -> Result<FunctionalDataset> {
    let step = step_of(grid)?;
    let kernel = spec.filter.map(|k| k.sample(step)).transpose()?;
    let mut values = Array2::<f64>::zeros((n, grid.len()));
    for (i, mut row) in values.rows_mut().into_iter().enumerate() {
        let s = derive_seed(seed, i as u64);
        let curve = match &kernel {
            Some(k) => filtered_bridge(k, grid, s)?,
            None => brownian_bridge(grid, s)?,
        };
        row.assign(&ndarray::ArrayView1::from(&curve));
    }
    FunctionalDataset::new(grid.clone(), values)
}

pub(crate) fn convolve(kernel: &[f64], inc: &[f64], step: f64) -> Vec<f64> {
    (0..inc.len())
        .map(|j| {
            let upto = j.min(kernel.len() - 1);
            step * (0..=upto).map(|l| kernel[l] * inc[j - l]).sum::<f64>()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endpoints_pinned() {
        let g = Grid::uniform(100).unwrap();
        let b = brownian_bridge(&g, 4).unwrap();
        assert_eq!(b[0], 0.0);
        let inc = bridge_increments(&g, 4).unwrap();
        assert!(inc.iter().sum::<f64>().abs() < 1e-12);
        let closed = Grid::new((0..=10).map(|j| j as f64 / 10.0).collect()).unwrap();
        let b = brownian_bridge(&closed, 9).unwrap();
        assert_eq!((b[0], b[10]), (0.0, 0.0));
    }

    #[test]
    fn dirac_recovers_increments() {
        let g = Grid::uniform(64).unwrap();
        let h = 1.0 / 64.0;
        let k = SampledKernel {
            step: h,
            values: vec![1.0 / h],
        };
        let r = filtered_bridge(&k, &g, 3).unwrap();
        let inc = bridge_increments(&g, 3).unwrap();
        for (a, b) in r.iter().zip(&inc) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn box_kernel_telescopes() {
        let g = Grid::uniform(50).unwrap();
        let h = 1.0 / 50.0;
        let window = 5;
        let k = SampledKernel {
            step: h,
            values: vec![2.0; window],
        };
        let r = filtered_bridge(&k, &g, 8).unwrap();
        let mut b = brownian_bridge(&g, 8).unwrap();
        b.push(0.0);
        for j in window..50 {
            let want = h * 2.0 * (b[j + 1] - b[j + 1 - window]);
            assert!((r[j] - want).abs() < 1e-13);
        }
    }

    #[test]
    fn zero_kernel_and_mismatch() {
        let g = Grid::uniform(20).unwrap();
        let k = SampledKernel {
            step: 0.05,
            values: vec![0.0; 3],
        };
        assert!(filtered_bridge(&k, &g, 1)
            .unwrap()
            .iter()
            .all(|&v| v == 0.0));
        let bad = SampledKernel {
            step: 0.01,
            values: vec![1.0],
        };
        assert!(matches!(
            filtered_bridge(&bad, &g, 1),
            Err(Error::Resolution(_))
        ));
    }

    #[test]
    fn kernels_integrate_to_one() {
        for spec in [
            KernelSpec::Gaussian { width: 0.03 },
            KernelSpec::Exponential { scale: 0.02 },
        ] {
            let k = spec.sample(1e-5).unwrap();
            let total: f64 = k.values.iter().sum::<f64>() * 1e-5;
            assert!((total - 1.0).abs() < 1e-2, "{total}");
        }
    }
}

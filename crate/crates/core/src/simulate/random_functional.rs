//! Random curves built from a bump template plus a filtered Brownian bridge:
//!
//! `y(t) = a · T(t; c, w) + b · (r ∗ dB)(t)`
//!
//! with `a`, `c`, `w`, `b` drawn per curve from uniform ranges.

use super::bridge::{filtered_bridge, KernelSpec};
use crate::error::{Error, Result};
use crate::fcore::{FunctionalDataset, Grid};
use crate::rng::{derive_seed, Rng};
use ndarray::Array2;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum Template {
    /// `exp(−(t−c)²/(2w²))`
    GaussianBump,
    /// Beta shape `s^{α−1}(1−s)^{β−1}` scaled to peak 1, on `[c − w/2, c + w/2]`.
    Beta { alpha: f64, beta: f64 },
}

impl Template {
    pub fn eval(&self, t: f64, center: f64, width: f64) -> f64 {
        match *self {
            Template::GaussianBump => {
                if width == 0.0 {
                    return 0.0;
                }
                (-0.5 * ((t - center) / width).powi(2)).exp()
            }
            Template::Beta { alpha, beta } => {
                let s = (t - center) / width + 0.5;
                if !(s > 0.0 && s < 1.0) {
                    return 0.0;
                }
                let shape = |x: f64| x.powf(alpha - 1.0) * (1.0 - x).powf(beta - 1.0);
                let mode = ((alpha - 1.0) / (alpha + beta - 2.0)).clamp(0.0, 1.0);
                let peak = shape(mode);
                if peak > 0.0 && peak.is_finite() {
                    shape(s) / peak
                } else {
                    shape(s)
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RandomFunctionalSpec {
    #[serde(default = "default_template")]
    pub template: Template,
    #[serde(default = "default_amplitude")]
    pub amplitude: [f64; 2],
    #[serde(default = "default_center")]
    pub center: [f64; 2],
    #[serde(default = "default_width")]
    pub width: [f64; 2],
    #[serde(default = "default_bridge_scale")]
    pub bridge_scale: [f64; 2],
    #[serde(default = "default_kernel")]
    pub kernel: KernelSpec,
}

fn default_template() -> Template {
    Template::Beta {
        alpha: 1.5,
        beta: 3.0,
    }
}
fn default_amplitude() -> [f64; 2] {
    [0.5, 1.5]
}
fn default_center() -> [f64; 2] {
    [0.35, 0.65]
}
fn default_width() -> [f64; 2] {
    [0.4, 0.8]
}
fn default_bridge_scale() -> [f64; 2] {
    [0.5, 1.0]
}
fn default_kernel() -> KernelSpec {
    KernelSpec::Gaussian { width: 0.02 }
}

impl Default for RandomFunctionalSpec {
    fn default() -> Self {
        Self {
            template: default_template(),
            amplitude: default_amplitude(),
            center: default_center(),
            width: default_width(),
            bridge_scale: default_bridge_scale(),
            kernel: default_kernel(),
        }
    }
}

impl RandomFunctionalSpec {
    fn validate(&self) -> Result<()> {
        for (name, r) in [
            ("amplitude", self.amplitude),
            ("center", self.center),
            ("width", self.width),
            ("bridge_scale", self.bridge_scale),
        ] {
            if !(r[0] <= r[1]) || !r[0].is_finite() || !r[1].is_finite() {
                return Err(Error::Config(format!(
                    "{name} range [{}, {}] is invalid",
                    r[0], r[1]
                )));
            }
        }
        if self.width[0] < 0.0 {
            return Err(Error::Config("widths must be nonnegative".into()));
        }
        if let Template::Beta { alpha, beta } = self.template {
            if !(alpha >= 1.0 && beta >= 1.0) {
                return Err(Error::Config("beta template needs alpha, beta >= 1".into()));
            }
        }
        Ok(())
    }
}

/// `n` curves; curve `i` draws its parameters from the stream derived from
/// `(seed, i)` and its bridge from a second derived seed.
pub fn random_functional_dataset(
    spec: &RandomFunctionalSpec,
    n: usize,
    grid: &Grid,
    seed: u64,
) -> Result<FunctionalDataset> {
    spec.validate()?;
    let step = grid
        .uniform_step()
        .ok_or_else(|| Error::Unsupported("random functionals need a uniform grid".into()))?;
    let kernel = spec.kernel.sample(step)?;
    let m = grid.len();
    let mut values = Array2::<f64>::zeros((n, m));
    for (i, mut row) in values.rows_mut().into_iter().enumerate() {
        let curve_seed = derive_seed(seed, i as u64);
        let mut rng = Rng::new(curve_seed);
        let amp = rng.uniform_range(spec.amplitude[0], spec.amplitude[1]);
        let center = rng.uniform_range(spec.center[0], spec.center[1]);
        let width = rng.uniform_range(spec.width[0], spec.width[1]);
        let scale = rng.uniform_range(spec.bridge_scale[0], spec.bridge_scale[1]);
        let noise = if scale != 0.0 {
            filtered_bridge(&kernel, grid, derive_seed(curve_seed, 0))?
        } else {
            vec![0.0; m]
        };
        for (j, (&t, v)) in grid.points().iter().zip(row.iter_mut()).enumerate() {
            *v = amp * spec.template.eval(t, center, width) + scale * noise[j];
        }
    }
    FunctionalDataset::new(grid.clone(), values)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_width_ranges_identical() {
        let spec = RandomFunctionalSpec {
            amplitude: [1.0, 1.0],
            center: [0.5, 0.5],
            width: [0.3, 0.3],
            bridge_scale: [0.0, 0.0],
            ..Default::default()
        };
        let ds = random_functional_dataset(&spec, 4, &Grid::uniform(100).unwrap(), 3).unwrap();
        for i in 1..4 {
            assert_eq!(ds.values().row(i), ds.values().row(0));
        }
        assert!(ds.values().iter().any(|&v| v > 0.5));
    }

    #[test]
    fn seeded() {
        let g = Grid::uniform(200).unwrap();
        let spec = RandomFunctionalSpec::default();
        let a = random_functional_dataset(&spec, 10, &g, 9).unwrap();
        let b = random_functional_dataset(&spec, 10, &g, 9).unwrap();
        let c = random_functional_dataset(&spec, 10, &g, 10).unwrap();
        assert_eq!(a.values(), b.values());
        assert_ne!(a.values(), c.values());
    }

    #[test]
    fn beta_peak_is_one() {
        let t = Template::Beta {
            alpha: 1.5,
            beta: 3.0,
        };
        // mode at s = 0.5 / 2.5 = 0.2, i.e. t = c − w/2 + 0.2 w
        assert!((t.eval(0.5 - 0.2 + 0.08, 0.5, 0.4) - 1.0).abs() < 1e-12);
        assert_eq!(t.eval(0.9, 0.5, 0.4), 0.0);
    }
}

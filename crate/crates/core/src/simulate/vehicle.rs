//! Quarter-vehicle model: a tire stage driven by the road and a suspension
//! stage driven by the tire stage,
//!
//! `m_t U″ + c_t U′ + k_t U = c_t R′ + k_t R`,
//! `m_s X″ + c_s X′ + k_s X = c_s U′ + k_s U`,
//!
//! with response `Y = m_s U″`. The road is given along the track; grid point
//! `s ∈ [0, 1]` is travelled at time `s · track_length / v`.

use super::bridge::{filtered_bridge, KernelSpec};
use crate::error::{Error, Result};
use crate::fcore::{FunctionalDataset, Grid};
use crate::rng::derive_seed;
use ndarray::Array2;
use serde::{Deserialize, Serialize};

/// Masses in kg, stiffnesses in N/m, damping in Ns/m, speed in m/s, track in m.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VehicleParams {
    pub m_s: f64,
    pub k_s: f64,
    pub c_s: f64,
    pub m_t: f64,
    pub k_t: f64,
    pub c_t: f64,
    pub v: f64,
    #[serde(default = "default_track")]
    pub track_length: f64,
}

fn default_track() -> f64 {
    50.0
}

impl Default for VehicleParams {
    fn default() -> Self {
        Self {
            m_s: 3400.0,
            k_s: 270_000.0,
            c_s: 6000.0,
            m_t: 350.0,
            k_t: 950_000.0,
            c_t: 300.0,
            v: 20.0,
            track_length: default_track(),
        }
    }
}

impl VehicleParams {
    pub fn validate(&self) -> Result<()> {
        let all = [
            self.m_s,
            self.k_s,
            self.c_s,
            self.m_t,
            self.k_t,
            self.c_t,
            self.v,
            self.track_length,
        ];
        if all.iter().any(|&p| !(p > 0.0 && p.is_finite())) {
            return Err(Error::Config(
                "vehicle parameters must all be positive".into(),
            ));
        }
        Ok(())
    }

    /// Largest undamped natural frequency (rad/s).
    pub fn max_natural_frequency(&self) -> f64 {
        (self.k_t / self.m_t)
            .sqrt()
            .max((self.k_s / self.m_s).sqrt())
    }

    /// `|H(ω)|` of the tire stage, `|k_t + iωc_t| / |k_t − m_t ω² + iωc_t|`.
    pub fn tire_gain(&self, omega: f64) -> f64 {
        let num = (self.k_t.powi(2) + (omega * self.c_t).powi(2)).sqrt();
        let den =
            ((self.k_t - self.m_t * omega * omega).powi(2) + (omega * self.c_t).powi(2)).sqrt();
        num / den
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VehicleResponse {
    pub x: Vec<f64>,
    pub u: Vec<f64>,
    pub y: Vec<f64>,
}

/// Integrates the cascade with fixed-step RK4 from rest. Between grid points
/// the road is linear, so `R′` is the forward difference on each step.
pub fn vehicle_response(
    params: &VehicleParams,
    road: &[f64],
    grid: &Grid,
) -> Result<VehicleResponse> {
    params.validate()?;
    let step = grid
        .uniform_step()
        .ok_or_else(|| Error::Unsupported("vehicle response needs a uniform grid".into()))?;
    if road.len() != grid.len() {
        return Err(Error::Dimension(format!(
            "road has {} samples, grid {}",
            road.len(),
            grid.len()
        )));
    }
    let dt = step * params.track_length / params.v;
    let omega = params.max_natural_frequency();
    if omega * dt > 0.1 {
        return Err(Error::Resolution(format!(
            "time step {dt:.3e} s is too coarse; need at most {:.3e} s (a grid of at least {} points)",
            0.1 / omega,
            (params.track_length / params.v * omega / 0.1).ceil() as usize
        )));
    }
    let p = *params;
    let m = road.len();
    let slope = |j: usize| -> f64 {
        if m < 2 {
            0.0
        } else if j + 1 < m {
            (road[j + 1] - road[j]) / dt
        } else {
            (road[j] - road[j - 1]) / dt
        }
    };
    // state: [U, U′, X, X′]
    let deriv = |s: [f64; 4], r: f64, dr: f64| -> [f64; 4] {
        let upp = (p.c_t * (dr - s[1]) + p.k_t * (r - s[0])) / p.m_t;
        let xpp = (p.c_s * (s[1] - s[3]) + p.k_s * (s[0] - s[2])) / p.m_s;
        [s[1], upp, s[3], xpp]
    };
    let axpy = |s: [f64; 4], h: f64, k: [f64; 4]| -> [f64; 4] {
        [
            s[0] + h * k[0],
            s[1] + h * k[1],
            s[2] + h * k[2],
            s[3] + h * k[3],
        ]
    };
    let mut out = VehicleResponse {
        x: Vec::with_capacity(m),
        u: Vec::with_capacity(m),
        y: Vec::with_capacity(m),
    };
    let mut s = [0.0; 4];
    for j in 0..m {
        let dr = slope(j);
        let upp = deriv(s, road[j], dr)[1];
        out.u.push(s[0]);
        out.x.push(s[2]);
        out.y.push(p.m_s * upp);
        if j + 1 == m {
            break;
        }
        let r0 = road[j];
        let k1 = deriv(s, r0, dr);
        let k2 = deriv(axpy(s, 0.5 * dt, k1), r0 + 0.5 * dt * dr, dr);
        let k3 = deriv(axpy(s, 0.5 * dt, k2), r0 + 0.5 * dt * dr, dr);
        let k4 = deriv(axpy(s, dt, k3), r0 + dt * dr, dr);
        for i in 0..4 {
            s[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VehicleSignal {
    /// Force response `m_s U″`.
    Y,
    /// Suspension displacement.
    X,
    /// Tire-stage displacement.
    U,
    /// The road profile itself.
    Road,
}

/// Vehicle responses to random roads `amplitude · (r ∗ dB)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VehicleSimSpec {
    pub params: VehicleParams,
    pub road_kernel: KernelSpec,
    /// Road elevation scale in m.
    pub road_amplitude: f64,
    pub signal: VehicleSignal,
}

impl Default for VehicleSimSpec {
    fn default() -> Self {
        Self {
            params: VehicleParams::default(),
            road_kernel: KernelSpec::Gaussian { width: 0.01 },
            road_amplitude: 0.05,
            signal: VehicleSignal::Y,
        }
    }
}

/// `n` responses; road `i` uses seed `derive_seed(seed, i)`.
pub fn vehicle_dataset(
    spec: &VehicleSimSpec,
    n: usize,
    grid: &Grid,
    seed: u64,
) -> Result<FunctionalDataset> {
    let step = grid
        .uniform_step()
        .ok_or_else(|| Error::Unsupported("vehicle response needs a uniform grid".into()))?;
    let kernel = spec.road_kernel.sample(step)?;
    let mut values = Array2::<f64>::zeros((n, grid.len()));
    for (i, mut row) in values.rows_mut().into_iter().enumerate() {
        let road: Vec<f64> = filtered_bridge(&kernel, grid, derive_seed(seed, i as u64))?
            .into_iter()
            .map(|v| spec.road_amplitude * v)
            .collect();
        let curve = match spec.signal {
            VehicleSignal::Road => road,
            signal => {
                let r = vehicle_response(&spec.params, &road, grid)?;
                match signal {
                    VehicleSignal::Y => r.y,
                    VehicleSignal::X => r.x,
                    _ => r.u,
                }
            }
        };
        row.assign(&ndarray::ArrayView1::from(&curve));
    }
    FunctionalDataset::new(grid.clone(), values)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_road() {
        let g = Grid::uniform(2000).unwrap();
        let r = vehicle_response(&VehicleParams::default(), &vec![0.0; 2000], &g).unwrap();
        assert!(r.x.iter().chain(&r.u).chain(&r.y).all(|&v| v == 0.0));
    }

    #[test]
    fn step_settles_to_static_deflection() {
        // 40 s of travel
        let p = VehicleParams {
            track_length: 800.0,
            ..VehicleParams::default()
        };
        let m = 40_000;
        let g = Grid::uniform(m).unwrap();
        let road: Vec<f64> = (0..m).map(|j| if j >= 10 { 0.05 } else { 0.0 }).collect();
        let r = vehicle_response(&p, &road, &g).unwrap();
        let tail = &r.u[m - 2000..];
        assert!(tail.iter().all(|&u| (u - 0.05).abs() < 1e-4));
        let x_tail = &r.x[m - 2000..];
        assert!(x_tail.iter().all(|&x| (x - 0.05).abs() < 1e-4));
    }

    #[test]
    fn coarse_grid_rejected() {
        let g = Grid::uniform(500).unwrap();
        let err = vehicle_response(&VehicleParams::default(), &vec![0.0; 500], &g).unwrap_err();
        assert!(matches!(err, Error::Resolution(_)));
        assert!(err.to_string().contains("need at most"));
    }
}

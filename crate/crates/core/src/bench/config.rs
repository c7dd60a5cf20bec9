use crate::ddk::StopCriterion;
use crate::error::{Error, Result};
use crate::simulate::{KlSpec, RandomFunctionalSpec};
use serde::{Deserialize, Serialize};
use std::path::Path;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentKind {
    EigenMse,
    BasisCompare,
    DdkVsEquispaced,
}

impl ExperimentKind {
    pub fn name(&self) -> &'static str {
        match self {
            ExperimentKind::EigenMse => "eigen_mse",
            ExperimentKind::BasisCompare => "basis_compare",
            ExperimentKind::DdkVsEquispaced => "ddk_vs_equispaced",
        }
    }

    /// Accepts both `eigen_mse` and `eigen-mse` spellings.
    pub fn parse(s: &str) -> Result<Self> {
        match s.replace('-', "_").as_str() {
            "eigen_mse" => Ok(Self::EigenMse),
            "basis_compare" => Ok(Self::BasisCompare),
            "ddk_vs_equispaced" => Ok(Self::DdkVsEquispaced),
            other => Err(Error::Config(format!("unknown experiment {other:?}"))),
        }
    }
}

/// Eigenvalue estimation under the true basis and a large equispaced splinet.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EigenMseSpec {
    pub model: KlSpec,
    /// Size of the equispaced reference splinet.
    pub reference_size: usize,
    pub reference_degree: usize,
    /// Number of leading eigenvalues reported.
    pub components: usize,
    pub center: bool,
}

impl Default for EigenMseSpec {
    fn default() -> Self {
        Self {
            model: KlSpec {
                sigma0: 0.1f64.sqrt(),
                ..KlSpec::default()
            },
            reference_size: 200,
            reference_degree: 3,
            components: 4,
            center: false,
        }
    }
}

/// Fourier vs. DDK bases of equal size on random functionals.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BasisCompareSpec {
    pub model: RandomFunctionalSpec,
    pub base_sizes: Vec<usize>,
    pub train_fraction: f64,
}

impl Default for BasisCompareSpec {
    fn default() -> Self {
        Self {
            model: RandomFunctionalSpec::default(),
            base_sizes: (1..=10).map(|i| 4 * i).collect(),
            train_fraction: 0.6,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum DataSource {
    /// Sparse KL model samples; `sample_sizes[0]` curves per replicate.
    Synthetic {
        #[serde(default)]
        model: KlSpec,
    },
    /// A fixed dataset; replicates differ only in the train/validation split.
    Csv { path: String },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum KnotPolicy {
    /// Exactly `count` greedy knots.
    Fixed { count: usize },
    /// Greedy knots until the validation step criterion fires.
    Threshold {
        theta: f64,
        criterion: StopCriterion,
        max_knots: usize,
    },
    /// Greedy knots up to `max_knots`, truncated at the validation elbow.
    Elbow { max_knots: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DdkCompareSpec {
    pub source: DataSource,
    pub knots: KnotPolicy,
    pub degree: usize,
    pub train_fraction: f64,
}

impl Default for DdkCompareSpec {
    fn default() -> Self {
        Self {
            source: DataSource::Synthetic {
                model: KlSpec::default(),
            },
            knots: KnotPolicy::Fixed { count: 10 },
            degree: 3,
            train_fraction: 0.6,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: ExperimentKind,
    #[serde(default = "default_sizes")]
    pub sample_sizes: Vec<usize>,
    #[serde(default = "default_replicates")]
    pub mc_replicates: usize,
    #[serde(default)]
    pub root_seed: u64,
    /// Points of the uniform sampling grid for synthetic data.
    #[serde(default = "default_grid")]
    pub grid_size: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
    #[serde(default)]
    pub eigen_mse: EigenMseSpec,
    #[serde(default)]
    pub basis_compare: BasisCompareSpec,
    #[serde(default)]
    pub ddk_vs_equispaced: DdkCompareSpec,
}

fn default_sizes() -> Vec<usize> {
    vec![25, 50, 100, 200, 400, 700]
}
fn default_replicates() -> usize {
    200
}
fn default_grid() -> usize {
    1000
}

impl ExperimentConfig {
    pub fn new(experiment: ExperimentKind) -> Self {
        let mut cfg: Self =
            serde_json::from_value(serde_json::json!({ "experiment": experiment.name() }))
                .expect("defaults");
        match experiment {
            ExperimentKind::EigenMse => {}
            ExperimentKind::BasisCompare => {
                cfg.sample_sizes = vec![10];
                cfg.mc_replicates = 20;
            }
            ExperimentKind::DdkVsEquispaced => {
                cfg.sample_sizes = vec![20];
                cfg.mc_replicates = 50;
            }
        }
        cfg
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_file<P: AsRef<Path>>(path: P) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<()> {
        if self.mc_replicates == 0 {
            return Err(Error::Config("mc_replicates must be at least 1".into()));
        }
        if self.sample_sizes.is_empty() || self.sample_sizes.contains(&0) {
            return Err(Error::Config(
                "sample_sizes must be a nonempty list of positive counts".into(),
            ));
        }
        if self.grid_size < 2 {
            return Err(Error::Config("grid_size must be at least 2".into()));
        }
        match self.experiment {
            ExperimentKind::EigenMse => {
                if self.sample_sizes.iter().any(|&n| n < 2) {
                    return Err(Error::Config(
                        "covariance estimation needs at least 2 curves".into(),
                    ));
                }
                let s = &self.eigen_mse;
                if s.components == 0 || s.components > s.model.lambda.len() {
                    return Err(Error::Config(
                        "components must be between 1 and the model's K".into(),
                    ));
                }
                if s.reference_size < 2 * s.reference_degree + 2 {
                    return Err(Error::Config(
                        "reference splinet is too small for its degree".into(),
                    ));
                }
            }
            ExperimentKind::BasisCompare => {
                let s = &self.basis_compare;
                if s.base_sizes.is_empty() || s.base_sizes.iter().any(|&b| b < 1) {
                    return Err(Error::Config("base_sizes must be positive".into()));
                }
                if self.sample_sizes.iter().any(|&n| n < 2) {
                    return Err(Error::Config(
                        "the train/validation split needs at least 2 curves".into(),
                    ));
                }
            }
            ExperimentKind::DdkVsEquispaced => {
                if self.sample_sizes.iter().any(|&n| n < 2) {
                    return Err(Error::Config(
                        "the train/validation split needs at least 2 curves".into(),
                    ));
                }
                match self.ddk_vs_equispaced.knots {
                    KnotPolicy::Fixed { count: 0 } => {
                        return Err(Error::Config("knot count must be positive".into()))
                    }
                    KnotPolicy::Threshold {
                        theta, max_knots, ..
                    } if !(theta > 0.0) || max_knots == 0 => {
                        return Err(Error::Config(
                            "threshold policy needs theta > 0 and max_knots >= 1".into(),
                        ))
                    }
                    KnotPolicy::Elbow { max_knots } if max_knots < 2 => {
                        return Err(Error::Config("elbow policy needs max_knots >= 2".into()))
                    }
                    _ => {}
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_json_uses_defaults() {
        let cfg = ExperimentConfig::from_json(r#"{"experiment": "eigen_mse"}"#).unwrap();
        assert_eq!(cfg.sample_sizes, vec![25, 50, 100, 200, 400, 700]);
        assert_eq!(cfg.mc_replicates, 200);
        assert!((cfg.eigen_mse.model.sigma0.powi(2) - 0.1).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_configs() {
        assert!(
            ExperimentConfig::from_json(r#"{"experiment": "eigen_mse", "mc_replicates": 0}"#)
                .is_err()
        );
        assert!(
            ExperimentConfig::from_json(r#"{"experiment": "eigen_mse", "sample_sizes": []}"#)
                .is_err()
        );
        assert!(ExperimentConfig::from_json(r#"{"experiment": "nope"}"#).is_err());
        assert!(ExperimentConfig::from_json(r#"{"experiment": "eigen_mse", "typo": 1}"#).is_err());
    }

    #[test]
    fn round_trip() {
        let cfg = ExperimentConfig::new(ExperimentKind::DdkVsEquispaced);
        let back = ExperimentConfig::from_json(&cfg.to_json()).unwrap();
        assert_eq!(cfg, back);
        assert_eq!(
            ExperimentKind::parse("ddk-vs-equispaced").unwrap(),
            ExperimentKind::DdkVsEquispaced
        );
    }
}

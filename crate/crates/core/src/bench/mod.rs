//! Monte Carlo experiments producing tidy CSV tables.

mod basis_compare;
mod config;
mod ddk_vs_equispaced;
mod eigen_mse;
mod table;

pub use basis_compare::{run_basis_compare, splinet_degree_for};
pub use config::{
    BasisCompareSpec, DataSource, DdkCompareSpec, EigenMseSpec, ExperimentConfig, ExperimentKind,
    KnotPolicy,
};
pub use ddk_vs_equispaced::{ddk_knots, run_ddk_vs_equispaced};
pub use eigen_mse::run_eigen_mse;
pub use table::{ResultRow, ResultTable};

use crate::error::Result;

pub fn run_experiment(config: &ExperimentConfig) -> Result<ResultTable> {
    match config.experiment {
        ExperimentKind::EigenMse => run_eigen_mse(config),
        ExperimentKind::BasisCompare => run_basis_compare(config),
        ExperimentKind::DdkVsEquispaced => run_ddk_vs_equispaced(config),
    }
}

/// Human-readable summary of what a run would do.
pub fn plan(config: &ExperimentConfig) -> String {
    let mut out = format!(
        "experiment: {}\nsample sizes: {:?}\nreplicates per cell: {}\nroot seed: {}\ngrid points: {}\n",
        config.experiment.name(),
        config.sample_sizes,
        config.mc_replicates,
        config.root_seed,
        config.grid_size
    );
    match config.experiment {
        ExperimentKind::EigenMse => {
            let s = &config.eigen_mse;
            out += &format!(
                "bases: model basis ({} elements), equispaced splinet ({} elements, degree {})\ncomponents: {}, centered: {}\ncells: {}\n",
                s.model.knots.len() + s.model.degree + 1,
                s.reference_size,
                s.reference_degree,
                s.components,
                s.center,
                2 * config.sample_sizes.len()
            );
        }
        ExperimentKind::BasisCompare => {
            let s = &config.basis_compare;
            out += &format!(
                "bases: fourier, ddk_piecewise_constant, ddk_splinet\nmodes: refit, fixed\nbase sizes: {:?}\ncells: {}\n",
                s.base_sizes,
                6 * s.base_sizes.len() * config.sample_sizes.len()
            );
        }
        ExperimentKind::DdkVsEquispaced => {
            let s = &config.ddk_vs_equispaced;
            out += &format!(
                "source: {}\nknot policy: {}\nsplinet degree: {}\n",
                serde_json::to_string(&s.source).expect("serializable"),
                serde_json::to_string(&s.knots).expect("serializable"),
                s.degree
            );
        }
    }
    out
}

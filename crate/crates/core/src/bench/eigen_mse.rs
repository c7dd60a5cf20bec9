use super::config::ExperimentConfig;
use super::table::{mean, ResultTable};
use crate::bases::{build_splinet, KnotSet, SampledBasis};
use crate::error::Result;
use crate::fcore::Grid;
use crate::fpca::fpca_from_coefs;
use crate::rng::derive_seed;
use crate::simulate::{sample_kl, KlModel};
use rayon::prelude::*;

/// Seed of replicate `rep` in the cell for sample size index `cell`.
pub(crate) fn replicate_seed(root: u64, cell: usize, rep: usize) -> u64 {
    derive_seed(derive_seed(root, cell as u64), rep as u64)
}

/// Leading eigenvalues estimated from KL-model samples under the model's own
/// basis (`true`) and an equispaced splinet (`reference`). Both bases see the
/// same samples in each replicate.
pub fn run_eigen_mse(config: &ExperimentConfig) -> Result<ResultTable> {
    config.validate()?;
    let spec = &config.eigen_mse;
    let model = KlModel::from_spec(&spec.model)?;
    let grid = Grid::uniform(config.grid_size)?;
    let reference = build_splinet(
        &KnotSet::equispaced(spec.reference_size - spec.reference_degree - 1),
        spec.reference_degree,
    )?;
    let bases = [("true", &model.basis), ("reference", &reference)];
    let sampled: Vec<SampledBasis> = bases
        .iter()
        .map(|(_, b)| SampledBasis::new(b, &grid))
        .collect();
    let k = spec.components;
    let truth = &model.lambda[..k];

    let mut table = ResultTable::new(config);
    for (ci, &n) in config.sample_sizes.iter().enumerate() {
        // estimates[rep][basis][component]
        let estimates: Vec<Vec<Vec<f64>>> = (0..config.mc_replicates)
            .into_par_iter()
            .map(|rep| -> Result<Vec<Vec<f64>>> {
                let data = sample_kl(&model, n, &grid, replicate_seed(config.root_seed, ci, rep))?;
                bases
                    .iter()
                    .zip(&sampled)
                    .map(|((_, basis), s)| {
                        let coefs = s.project(&data)?;
                        let fit = fpca_from_coefs(&coefs, basis, spec.center)?;
                        Ok(fit.eigenvalues.iter().take(k).copied().collect())
                    })
                    .collect()
            })
            .collect::<Result<_>>()?;
        for (bi, (name, _)) in bases.iter().enumerate() {
            let cell = format!("n={n}/basis={name}");
            for (rep, est) in estimates.iter().enumerate() {
                for (c, v) in est[bi].iter().enumerate() {
                    table.push(&cell, rep, &format!("lambda_{}", c + 1), *v);
                }
            }
            for c in 0..k {
                let vals: Vec<f64> = estimates.iter().map(|e| e[bi][c]).collect();
                let sq: Vec<f64> = vals.iter().map(|v| (v - truth[c]).powi(2)).collect();
                table.push(&cell, "all", &format!("mean_lambda_{}", c + 1), mean(&vals));
                table.push(&cell, "all", &format!("mse_lambda_{}", c + 1), mean(&sq));
            }
        }
    }
    Ok(table)
}

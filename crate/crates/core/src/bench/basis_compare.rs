use super::config::ExperimentConfig;
use super::eigen_mse::replicate_seed;
use super::table::{median, ResultTable};
use crate::bases::{build_fourier, build_piecewise_constant, build_splinet, KnotSet, SampledBasis};
use crate::ddk::{select_knots, split_dataset, DdkConfig, SplitSpec, StopCriterion};
use crate::error::Result;
use crate::fcore::{FunctionalDataset, Grid};
use crate::rng::derive_seed;
use crate::simulate::random_functional_dataset;
use rayon::prelude::*;

/// Spline degree used for a splinet of `size` elements: cubic when possible,
/// otherwise the largest degree whose splinet has that many elements.
pub fn splinet_degree_for(size: usize) -> Option<usize> {
    if size < 2 {
        return None;
    }
    Some(3.min((size - 2) / 2))
}

/// Greedy knots in selection order, up to `count`.
fn ddk_order(data: &FunctionalDataset, count: usize, fraction: f64, seed: u64) -> Result<Vec<f64>> {
    let (train, valid) = split_dataset(
        data,
        &SplitSpec {
            train_fraction: fraction,
            seed,
        },
    )?;
    let cfg = DdkConfig::new(f64::MIN_POSITIVE, StopCriterion::AbsoluteStep, count.max(1));
    Ok(select_knots(&train, &valid, &cfg)?.selected)
}

fn first_knots(order: &[f64], count: usize) -> Result<KnotSet> {
    KnotSet::new(order[..count.min(order.len())].to_vec())
}

/// AMSE of one sample under Fourier, DDK piecewise-constant and DDK splinet
/// bases of each size, for knots chosen from `knot_source`.
fn amse_row(data: &FunctionalDataset, order: &[f64], sizes: &[usize]) -> Result<Vec<[f64; 3]>> {
    let grid = data.grid();
    sizes
        .iter()
        .map(|&size| {
            let fourier = SampledBasis::new(&build_fourier(size)?, grid).amse(data)?;
            let pc = SampledBasis::new(
                &build_piecewise_constant(&first_knots(order, size - 1)?),
                grid,
            )
            .amse(data)?;
            let spl = match splinet_degree_for(size) {
                Some(k) => {
                    let knots = first_knots(order, size - k - 1)?;
                    SampledBasis::new(&build_splinet(&knots, k)?, grid).amse(data)?
                }
                None => pc,
            };
            Ok([fourier, pc, spl])
        })
        .collect()
}

const BASES: [&str; 3] = ["fourier", "ddk_piecewise_constant", "ddk_splinet"];
const MODES: [&str; 2] = ["refit", "fixed"];

/// AMSE of Fourier and DDK bases across basis sizes. In `refit` mode the DDK
/// knots are chosen on each Monte Carlo sample; in `fixed` mode they are
/// chosen once on an original sample and reused.
pub fn run_basis_compare(config: &ExperimentConfig) -> Result<ResultTable> {
    config.validate()?;
    let spec = &config.basis_compare;
    let grid = Grid::uniform(config.grid_size)?;
    let max_size = *spec.base_sizes.iter().max().expect("nonempty");
    let mut table = ResultTable::new(config);
    for (ci, &n) in config.sample_sizes.iter().enumerate() {
        let original_seed = derive_seed(derive_seed(config.root_seed, ci as u64), u64::MAX);
        let original = random_functional_dataset(&spec.model, n, &grid, original_seed)?;
        let fixed_order = ddk_order(&original, max_size - 1, spec.train_fraction, original_seed)?;
        // results[rep][mode][size][basis]
        let results: Vec<[Vec<[f64; 3]>; 2]> = (0..config.mc_replicates)
            .into_par_iter()
            .map(|rep| -> Result<[Vec<[f64; 3]>; 2]> {
                let seed = replicate_seed(config.root_seed, ci, rep);
                let data = random_functional_dataset(&spec.model, n, &grid, seed)?;
                let order = ddk_order(&data, max_size - 1, spec.train_fraction, seed)?;
                Ok([
                    amse_row(&data, &order, &spec.base_sizes)?,
                    amse_row(&data, &fixed_order, &spec.base_sizes)?,
                ])
            })
            .collect::<Result<_>>()?;
        for (b, basis) in BASES.iter().enumerate() {
            for (mi, mode) in MODES.iter().enumerate() {
                for (si, size) in spec.base_sizes.iter().enumerate() {
                    let cell = format!("n={n}/basis={basis}/mode={mode}/size={size}");
                    let vals: Vec<f64> = results.iter().map(|r| r[mi][si][b]).collect();
                    for (rep, v) in vals.iter().enumerate() {
                        table.push(&cell, rep, "amse", *v);
                    }
                    table.push(&cell, "all", "median_amse", median(&vals));
                }
            }
        }
    }
    Ok(table)
}

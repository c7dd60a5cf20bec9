use super::config::{DataSource, ExperimentConfig, KnotPolicy};
use super::eigen_mse::replicate_seed;
use super::table::{mean, median, ResultTable};
use crate::bases::{build_splinet, KnotSet, SampledBasis};
use crate::ddk::{select_knots, split_dataset, DdkConfig, SplitSpec, StopCriterion};
use crate::error::Result;
use crate::fcore::{read_dataset_file, FunctionalDataset, Grid};
use crate::simulate::{sample_kl, KlModel};
use rayon::prelude::*;

/// Knots selected on `data` under `policy`.
pub fn ddk_knots(
    data: &FunctionalDataset,
    policy: &KnotPolicy,
    fraction: f64,
    seed: u64,
) -> Result<KnotSet> {
    let (train, valid) = split_dataset(
        data,
        &SplitSpec {
            train_fraction: fraction,
            seed,
        },
    )?;
    let (cfg, elbow) = match *policy {
        KnotPolicy::Fixed { count } => (
            DdkConfig::new(f64::MIN_POSITIVE, StopCriterion::AbsoluteStep, count),
            false,
        ),
        KnotPolicy::Threshold {
            theta,
            criterion,
            max_knots,
        } => (DdkConfig::new(theta, criterion, max_knots), false),
        KnotPolicy::Elbow { max_knots } => (
            DdkConfig::new(f64::MIN_POSITIVE, StopCriterion::AbsoluteStep, max_knots),
            true,
        ),
    };
    let result = select_knots(&train, &valid, &cfg)?;
    if elbow {
        if let Some(e) = result.elbow_index {
            return Ok(result.knots_at(e));
        }
    }
    Ok(result.knots)
}

struct Outcome {
    count: usize,
    ddk: f64,
    equi: f64,
}

fn compare_one(data: &FunctionalDataset, config: &ExperimentConfig, seed: u64) -> Result<Outcome> {
    let spec = &config.ddk_vs_equispaced;
    let knots = ddk_knots(data, &spec.knots, spec.train_fraction, seed)?;
    let grid = data.grid();
    let ddk = SampledBasis::new(&build_splinet(&knots, spec.degree)?, grid).amse(data)?;
    let equi = SampledBasis::new(
        &build_splinet(&KnotSet::equispaced(knots.len()), spec.degree)?,
        grid,
    )
    .amse(data)?;
    Ok(Outcome {
        count: knots.len(),
        ddk,
        equi,
    })
}

/// Splinet AMSE on DDK knots against the same number of equispaced knots.
pub fn run_ddk_vs_equispaced(config: &ExperimentConfig) -> Result<ResultTable> {
    config.validate()?;
    let spec = &config.ddk_vs_equispaced;
    let mut table = ResultTable::new(config);
    let fixed = match &spec.source {
        DataSource::Csv { path } => Some(read_dataset_file(path)?),
        DataSource::Synthetic { .. } => None,
    };
    let model = match &spec.source {
        DataSource::Synthetic { model } => Some(KlModel::from_spec(model)?),
        DataSource::Csv { .. } => None,
    };
    let grid = Grid::uniform(config.grid_size)?;
    for (ci, &n) in config.sample_sizes.iter().enumerate() {
        let outcomes: Vec<Outcome> = (0..config.mc_replicates)
            .into_par_iter()
            .map(|rep| {
                let seed = replicate_seed(config.root_seed, ci, rep);
                match (&fixed, &model) {
                    (Some(data), _) => compare_one(data, config, seed),
                    (None, Some(model)) => {
                        compare_one(&sample_kl(model, n, &grid, seed)?, config, seed)
                    }
                    (None, None) => unreachable!("source is either a file or a model"),
                }
            })
            .collect::<Result<_>>()?;
        let cell = match &fixed {
            Some(data) => format!("n={}", data.n_curves()),
            None => format!("n={n}"),
        };
        let mut improvements = Vec::with_capacity(outcomes.len());
        let mut wins = 0usize;
        for (rep, o) in outcomes.iter().enumerate() {
            let ratio = o.ddk / o.equi;
            table.push(&cell, rep, "knot_count", o.count as f64);
            table.push(&cell, rep, "amse_ddk", o.ddk);
            table.push(&cell, rep, "amse_equispaced", o.equi);
            table.push(&cell, rep, "ratio", ratio);
            improvements.push(1.0 - ratio);
            if o.ddk <= o.equi {
                wins += 1;
            }
        }
        table.push(
            &cell,
            "all",
            "win_fraction",
            wins as f64 / outcomes.len() as f64,
        );
        table.push(&cell, "all", "median_improvement", median(&improvements));
        table.push(
            &cell,
            "all",
            "mean_amse_ddk",
            mean(&outcomes.iter().map(|o| o.ddk).collect::<Vec<_>>()),
        );
        table.push(
            &cell,
            "all",
            "mean_amse_equispaced",
            mean(&outcomes.iter().map(|o| o.equi).collect::<Vec<_>>()),
        );
        if fixed.is_some() {
            break;
        }
    }
    Ok(table)
}

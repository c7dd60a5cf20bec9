use ddk_core::bases::SampledBasis;
use ddk_core::fcore::Grid;
use ddk_core::simulate::{
    bridge_dataset, brownian_bridge, filtered_bridge, random_functional_dataset, sample_kl,
    sample_slepian_gauss, vehicle_response, BridgeSpec, KernelSpec, KlModel, RandomFunctionalSpec,
    SlepianGaussModel, VehicleParams,
};

/// Steady-state tire-stage amplitude under a sinusoidal road matches `|H(ω)|`.
#[test]
fn vehicle_tire_gain_matches_transfer_function() {
    let params = VehicleParams {
        track_length: 2000.0,
        ..Default::default()
    };
    let duration = params.track_length / params.v;
    let m = 100_000;
    let grid = Grid::uniform(m).unwrap();
    for omega in [20.0, 45.0, 80.0] {
        let road = grid.sample(|s| (omega * s * duration).sin());
        let resp = vehicle_response(&params, &road, &grid).unwrap();
        let tail = &resp.u[m * 9 / 10..];
        let amp = tail.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        let want = params.tire_gain(omega);
        assert!(
            (amp - want).abs() < 0.05 * want,
            "omega {omega}: amplitude {amp}, gain {want}"
        );
    }
}

#[test]
fn vehicle_rejects_coarse_grid() {
    let grid = Grid::uniform(50).unwrap();
    let road = vec![0.0; 50];
    assert!(vehicle_response(&VehicleParams::default(), &road, &grid).is_err());
}

#[test]
fn kl_curves_without_noise_lie_in_the_model_span() {
    let model = KlModel::sparse_example(0.0);
    let grid = Grid::uniform(1000).unwrap();
    let data = sample_kl(&model, 50, &grid, 1).unwrap();
    let sampled = SampledBasis::new(&model.basis, &grid);
    let amse = sampled.amse(&data).unwrap();
    assert!(amse < 1e-20, "residual {amse}");
}

#[test]
fn kl_total_variance_matches_eigenvalue_sum() {
    let model = KlModel::sparse_example(0.0);
    let grid = Grid::uniform(500).unwrap();
    let data = sample_kl(&model, 4000, &grid, 2).unwrap();
    let n = data.n_curves() as f64;
    let total: f64 = (0..data.n_curves())
        .map(|i| grid.l2_norm_sq(data.curve(i)).unwrap())
        .sum::<f64>()
        / n;
    let want: f64 = model.lambda.iter().sum();
    assert!((total - want).abs() < 0.05 * want, "{total} vs {want}");
}

#[test]
fn bridge_variance_is_t_times_one_minus_t() {
    let grid = Grid::uniform(100).unwrap();
    let data = bridge_dataset(&BridgeSpec::default(), 20_000, &grid, 3).unwrap();
    for j in [0usize, 20, 50, 80] {
        let t = j as f64 / 100.0;
        let var = data.values().column(j).iter().map(|v| v * v).sum::<f64>() / 20_000.0;
        assert!((var - t * (1.0 - t)).abs() < 0.01, "t={t}: {var}");
    }
}

#[test]
fn filtered_bridge_needs_matching_kernel_step() {
    let grid = Grid::uniform(200).unwrap();
    let kernel = KernelSpec::Exponential { scale: 0.05 }
        .sample(1.0 / 100.0)
        .unwrap();
    assert!(filtered_bridge(&kernel, &grid, 1).is_err());
    let kernel = KernelSpec::Exponential { scale: 0.05 }
        .sample(1.0 / 200.0)
        .unwrap();
    assert_eq!(filtered_bridge(&kernel, &grid, 1).unwrap().len(), 200);
}

#[test]
fn bridge_streams_depend_on_seed() {
    let grid = Grid::uniform(64).unwrap();
    assert_eq!(
        brownian_bridge(&grid, 5).unwrap(),
        brownian_bridge(&grid, 5).unwrap()
    );
    assert_ne!(
        brownian_bridge(&grid, 5).unwrap(),
        brownian_bridge(&grid, 6).unwrap()
    );
}

#[test]
fn slepian_samples_cross_the_level_at_zero() {
    let model = SlepianGaussModel {
        u: 1.5,
        ..Default::default()
    };
    let grid = Grid::uniform(40).unwrap();
    let zero = grid
        .points()
        .iter()
        .position(|&s| model.time(s).abs() < 1e-12)
        .unwrap();
    let data = sample_slepian_gauss(&model, 200, &grid, 4).unwrap();
    for v in data.values().column(zero) {
        assert!((v - 1.5).abs() < 1e-2, "{v}");
    }
}

#[test]
fn random_functionals_are_finite_and_reproducible() {
    let grid = Grid::uniform(300).unwrap();
    let spec = RandomFunctionalSpec::default();
    let a = random_functional_dataset(&spec, 10, &grid, 9).unwrap();
    let b = random_functional_dataset(&spec, 10, &grid, 9).unwrap();
    assert_eq!(a.values(), b.values());
    assert!(a.values().iter().all(|v| v.is_finite()));
    assert_eq!(a.n_curves(), 10);
}

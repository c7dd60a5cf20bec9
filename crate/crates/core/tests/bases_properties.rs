use ddk_core::bases::{
    amse, build_fourier, build_piecewise_constant, build_splinet, eval_bspline, project,
    reconstruct, BsplineFamily, KnotSet,
};
use ddk_core::fcore::{
    exact_poly_inner_product, FunctionalDataset, Grid, PiecewisePolynomial, QuadratureRule,
};
use ddk_core::linalg::right_solve_spd;
use ndarray::Array2;
use proptest::prelude::*;

fn knot_set(min: usize, max: usize) -> impl Strategy<Value = KnotSet> {
    prop::collection::btree_set(1u32..10_000, min..=max)
        .prop_map(|s| KnotSet::new(s.into_iter().map(|v| v as f64 / 10_000.0).collect()).unwrap())
}

/// `∫ r²` for `r = f - g`, integrating exactly on every knot interval.
fn residual_norm<F: Fn(f64) -> f64>(edges: &[f64], degree: usize, r: F) -> f64 {
    let rule = QuadratureRule::gauss_legendre(degree + 1);
    edges
        .windows(2)
        .map(|w| rule.mapped(w[0], w[1]).integrate(|t| r(t) * r(t)))
        .sum::<f64>()
        .sqrt()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn partition_of_unity(knots in knot_set(6, 20), degree in 0usize..=5, u in 0.0f64..1.0) {
        prop_assume!(knots.len() >= 2 * degree);
        let fam = BsplineFamily::new(knots.clone(), degree).unwrap();
        let ext = fam.extended_knots();
        let t = u;
        let sum: f64 = (0..fam.len()).map(|i| eval_bspline(ext, degree, i, t).unwrap()).sum();
        prop_assert!((sum - 1.0).abs() < 1e-10, "sum {}", sum);
    }

    #[test]
    fn splinet_orthonormal_and_local(knots in knot_set(4, 40), degree in 0usize..=3) {
        let basis = build_splinet(&knots, degree).unwrap();
        let gram = basis.gram().unwrap();
        for i in 0..basis.size() {
            for j in 0..basis.size() {
                let want = if i == j { 1.0 } else { 0.0 };
                prop_assert!((gram[[i, j]] - want).abs() < 1e-8, "G[{},{}] = {}", i, j, gram[[i, j]]);
            }
        }
        let edges = knots.edges();
        for (j, e) in basis.splinet_layout().unwrap().iter().enumerate() {
            prop_assert!(e.support_intervals(degree) <= (degree + 1) << e.level);
            // zero on every knot interval outside the node's span
            let lo = e.first.saturating_sub(degree);
            let hi = e.end;
            for (q, w) in edges.windows(2).enumerate() {
                if q < lo || q >= hi {
                    let v = basis.eval(j, 0.5 * (w[0] + w[1])).unwrap();
                    prop_assert!(v == 0.0, "element {} nonzero on interval {}", j, q);
                }
            }
        }
    }

    #[test]
    fn splinet_spans_bsplines(knots in knot_set(4, 25), degree in 1usize..=3) {
        let basis = build_splinet(&knots, degree).unwrap();
        let fam = BsplineFamily::new(knots.clone(), degree).unwrap();
        prop_assert_eq!(basis.size(), fam.len());
        let edges = knots.edges();
        let elems: Vec<_> = (0..basis.size()).map(|j| basis.element(j).unwrap()).collect();
        // B-splines into the splinet
        for i in 0..fam.len() {
            let b = fam.element(i);
            let c: Vec<f64> = elems.iter().map(|f| exact_poly_inner_product(&b, f).unwrap()).collect();
            let r = residual_norm(&edges, degree, |t| {
                b.eval(t) - c.iter().zip(&elems).map(|(c, f)| c * f.eval(t)).sum::<f64>()
            });
            prop_assert!(r < 1e-8, "B-spline {} residual {}", i, r);
        }
        // splinet into the B-splines
        let g = fam.gram();
        let bs: Vec<_> = (0..fam.len()).map(|i| fam.element(i)).collect();
        let mut rhs = Array2::<f64>::zeros((basis.size(), fam.len()));
        for (j, f) in elems.iter().enumerate() {
            for (i, b) in bs.iter().enumerate() {
                rhs[[j, i]] = exact_poly_inner_product(f, b).unwrap();
            }
        }
        let beta = right_solve_spd(&rhs, &g).unwrap();
        for (j, f) in elems.iter().enumerate() {
            let r = residual_norm(&edges, degree, |t| {
                f.eval(t) - bs.iter().enumerate().map(|(i, b)| beta[[j, i]] * b.eval(t)).sum::<f64>()
            });
            prop_assert!(r < 1e-8, "element {} residual {}", j, r);
        }
    }

    #[test]
    fn projection_idempotent(
        seed in any::<u64>(),
        size in 1usize..40,
        cuts in prop::collection::btree_set(1usize..200, 0..30),
    ) {
        let grid = Grid::uniform(200).unwrap();
        let mut rng = ddk_core::rng::Rng::new(seed);
        let mut x = Array2::<f64>::zeros((4, 200));
        x.iter_mut().for_each(|v| *v = rng.normal());
        let ds = FunctionalDataset::new(grid.clone(), x).unwrap();
        let knots = KnotSet::new(cuts.into_iter().map(|c| c as f64 / 200.0).collect()).unwrap();
        for basis in [build_fourier(size).unwrap(), build_piecewise_constant(&knots)] {
            let c = project(&ds, &basis);
            let back = ds.with_values(reconstruct(&c, &basis, &grid).unwrap()).unwrap();
            let c2 = project(&back, &basis);
            let err = (&c2 - &c).iter().fold(0.0f64, |a, v| a.max(v.abs()));
            prop_assert!(err < 1e-9, "idempotence error {}", err);
        }
    }

    #[test]
    fn amse_monotone_under_refinement(
        seed in any::<u64>(),
        knots in knot_set(4, 15),
        extra in 1u32..10_000,
        degree in 0usize..=3,
    ) {
        let t_new = extra as f64 / 10_000.0;
        prop_assume!(!knots.contains(t_new));
        let grid = Grid::uniform(300).unwrap();
        let mut rng = ddk_core::rng::Rng::new(seed);
        let mut x = Array2::<f64>::zeros((3, 300));
        for mut row in x.rows_mut() {
            let mut acc = 0.0;
            for v in row.iter_mut() {
                acc += rng.normal() * 0.1;
                *v = acc;
            }
        }
        let ds = FunctionalDataset::new(grid, x).unwrap();
        let mut finer = knots.clone();
        finer.insert(t_new).unwrap();
        let (a, b) = if degree == 0 {
            (
                amse(&ds, &build_piecewise_constant(&knots)).unwrap(),
                amse(&ds, &build_piecewise_constant(&finer)).unwrap(),
            )
        } else {
            prop_assume!(knots.len() > degree);
            (
                amse(&ds, &build_splinet(&knots, degree).unwrap()).unwrap(),
                amse(&ds, &build_splinet(&finer, degree).unwrap()).unwrap(),
            )
        };
        prop_assert!(b <= a + 1e-10 * a.max(1.0), "{} -> {}", a, b);
        prop_assert!(b >= 0.0);
    }
}

#[test]
fn fourier_exactly_orthonormal_on_uniform_grid() {
    let grid = Grid::uniform(500).unwrap();
    let phi = build_fourier(30).unwrap().sample(&grid);
    let g = phi.t().dot(&phi) / 500.0;
    let err = (&g - &Array2::<f64>::eye(30))
        .iter()
        .fold(0.0f64, |a, v| a.max(v.abs()));
    assert!(err < 1e-12);
}

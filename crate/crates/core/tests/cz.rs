use nilharm::catalog;
use nilharm::cz::{self, PseudoDistance};
use nilharm::orbit::OrbitData;
use nilharm::rational::unit_vec;
use nilharm::twist::{symbols, Grid, PedersenCalculus, PredualGroup, SampledSymbol};
use rand::SeedableRng;

fn h3() -> PredualGroup {
    let o = OrbitData::new(&catalog::h3(), &unit_vec(3, 0)).unwrap();
    PredualGroup::from_orbit(&o).unwrap()
}

fn calibrated(g: &PredualGroup) -> PseudoDistance {
    let mut m = PseudoDistance::default_for(g);
    m.calibrate(&mut rand_chacha::ChaCha8Rng::seed_from_u64(0), 4000).unwrap();
    m
}

fn test_functions(grid: &Grid) -> Vec<Vec<f64>> {
    let pts: Vec<Vec<f64>> = (0..grid.len()).map(|i| grid.point(i)).collect();
    let bump = |c: [f64; 2], s: f64| move |x: &Vec<f64>| (-((x[0] - c[0]).powi(2) + (x[1] - c[1]).powi(2)) / (2.0 * s * s)).exp();
    let a = bump([0.0, 0.0], 0.3);
    let b1 = bump([1.5, -1.0], 0.2);
    let b2 = bump([-2.0, 1.0], 0.5);
    vec![
        pts.iter().map(|x| 4.0 * a(x)).collect(),
        pts.iter().map(|x| 6.0 * b1(x) + 2.0 * b2(x)).collect(),
        pts.iter()
            .map(|x| if x[0].abs() < 2.0 && x[1].abs() < 1.0 { 1.0 + (3.0 * x[0]).sin().abs() } else { 0.0 })
            .collect(),
    ]
}

#[test]
fn decomposition_at_scale() {
    let g = h3();
    let m = calibrated(&g);
    let grid = Grid::new(2, 8.0, 128).unwrap();
    for f in test_functions(&grid) {
        let fmax = f.iter().cloned().fold(0.0, f64::max);
        for level in [0.25, 0.5, 0.75] {
            let cov = cz::cz_cover(&f, level * fmax, &m, &grid).unwrap();
            let r = cz::cz_decompose(&f, Some(&cov), &g, &grid).unwrap();
            assert!(cov.covers_level_set && cov.overlap <= 64, "M = {}", cov.overlap);
            assert!(r.checks.reconstruction <= 1e-12, "{}", r.checks.reconstruction);
            assert!(r.checks.mean_zero <= 1e-12, "{}", r.checks.mean_zero);
            assert!(r.checks.support_contained && r.checks.below_level_outside);
            assert!(cov.c_prime.is_finite() && r.checks.c_double_prime.is_finite());
        }
    }
}

#[test]
fn hormander_refinement() {
    let g = h3();
    let m = calibrated(&g);
    let c2 = 4.0 * m.c_m();
    let vals: Vec<f64> = [128, 256]
        .iter()
        .map(|&n| {
            let grid = Grid::new(2, 8.0, n).unwrap();
            let k = cz::truncated_power(grid, 3.0, 1.0, 4.0);
            cz::hormander_twist_estimate(&k, &m, c2, &grid).unwrap().value
        })
        .collect();
    assert!(vals[1] > 0.0);
    assert!((vals[0] - vals[1]).abs() <= 0.1 * vals[1], "{vals:?}");
}

#[test]
fn weak11_levels() {
    let g = h3();
    let grid = Grid::new(2, 8.0, 128).unwrap();
    let k = cz::truncated_power(grid, 2.0, 0.5, 4.0);
    let f = symbols::approximate_identity(grid, vec![0.0, 0.0], 0.15);
    let levels = [0.125, 0.25, 0.5, 1.0];
    let r = cz::weak11_empirical(&g, &k, &f, &levels).unwrap();
    assert!(r.levels.iter().all(|l| l.ratio > 0.0));
    assert!(r.spread <= 4.0, "{}", r.spread);
    assert!(cz::weak11_scaling_check(&g, &k, &f, &levels).unwrap());
}

#[test]
fn multiplier_at_scale() {
    let g = h3();
    let calc = PedersenCalculus::calibrate(8.0, 128).unwrap();
    let plane = *calc.plane();
    let fam = symbols::hermite_family(plane);
    let u = symbols::approximate_identity(plane, vec![0.0, 0.0], 0.1);
    let rep = cz::multiplier_check(&calc, &g, &u, &fam).unwrap();
    assert!(rep.max_residual() <= 1e-2, "{rep:?}");
    assert!(rep.route_agreement <= 1e-10);
    let rep0 = cz::multiplier_check(&calc, &g, &SampledSymbol::zeros(plane), &fam).unwrap();
    assert!(rep0.max_residual() <= 1e-10);
    let u = cz::truncated_power(plane, 1.5, 0.25, 2.0);
    for (p, ratio) in cz::lp_ratios(&g, &u, &fam, &[1.25, 1.5, 2.0]).unwrap() {
        assert!(ratio <= u.l1_norm() * (1.0 + 1e-9), "p = {p}: {ratio}");
    }
}

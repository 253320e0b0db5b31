//! Verification suites shared by `nilharm report` and the acceptance tests.

use nilharm::catalog;
use nilharm::cz::{self, PseudoDistance};
use nilharm::lie::{derivation_space, is_characteristically_nilpotent, jordan_holder_flag};
use nilharm::orbit::OrbitData;
use nilharm::rational::{int, is_zero_vec, random_rational, random_vec, rat, scale_vec, unit_vec};
use nilharm::report::Report;
use nilharm::seed::Streams;
use nilharm::symplectic::{central_extension, is_two_cocycle, symplectic_exists_graph, Graph};
use nilharm::twist::{
    ccr_phase_check, line_gaussian, symbols, twisted_convolve, verify_pedersen_identities, Grid, PedersenCalculus,
    PredualGroup, SampledSymbol,
};
use nilharm::{LieAlgebra, Rational, Result};
use num_complex::Complex64;
use rand::Rng;

pub const SUITES: [&str; 5] = ["exact", "examples", "pedersen", "cz", "multiplier"];

/// Runs a named suite.
pub fn run_suite(name: &str, seed: u64) -> Option<Result<Report>> {
    let command = vec!["report".to_string(), name.to_string()];
    let mut r = Report::new(command, seed);
    let out = match name {
        "exact" => exact(&mut r, seed),
        "examples" => examples(&mut r, seed),
        "pedersen" => pedersen(&mut r),
        "cz" => cz_suite(&mut r, seed),
        "multiplier" => multiplier(&mut r),
        _ => return None,
    };
    Some(out.map(|_| r))
}

fn flat_orbit(alg: &LieAlgebra) -> Result<OrbitData> {
    OrbitData::new(alg, &unit_vec(alg.dim(), 0))
}

pub fn h3_group() -> Result<PredualGroup> {
    PredualGroup::from_orbit(&flat_orbit(&catalog::h3())?)
}

/// Jacobi, BCH associativity, flags and the flat-orbit cocycle, all exact.
pub fn exact(r: &mut Report, seed: u64) -> Result<()> {
    let streams = Streams::new(seed);
    for (name, alg) in catalog::all() {
        r.catalog_id(name.clone());
        let n = alg.dim();
        let mut rng = streams.stream(&format!("exact/{name}"));
        let mut jacobi = true;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    jacobi &= is_zero_vec(&alg.jacobi_residual(&unit_vec(n, i), &unit_vec(n, j), &unit_vec(n, k)));
                }
            }
        }
        for _ in 0..20 {
            let (x, y, z) = (random_vec(&mut rng, n, 3, 3), random_vec(&mut rng, n, 3, 3), random_vec(&mut rng, n, 3, 3));
            jacobi &= is_zero_vec(&alg.jacobi_residual(&x, &y, &z));
        }
        r.holds(&format!("{name}: Jacobi residual zero"), jacobi);

        let mut assoc = true;
        for _ in 0..100 {
            let (x, y, z) = (random_vec(&mut rng, n, 2, 3), random_vec(&mut rng, n, 2, 3), random_vec(&mut rng, n, 2, 3));
            let xy_z = alg.bch_product(&alg.bch_product(&x, &y)?, &z)?;
            let x_yz = alg.bch_product(&x, &alg.bch_product(&y, &z)?)?;
            assoc &= xy_z == x_yz;
        }
        r.holds(&format!("{name}: BCH associative on 100 triples"), assoc);

        let flag = jordan_holder_flag(&alg, None)?;
        r.holds(&format!("{name}: Jordan-Hölder flag invariants"), flag.verify(&alg).is_ok());
    }

    let h3 = flat_orbit(&catalog::h3())?;
    r.holds("h3: jump indices {2,3}", h3.jump_set() == [2, 3]);

    for (name, alg) in catalog::flat() {
        let o = flat_orbit(&alg)?;
        let d = o.d();
        r.holds(&format!("{name}: orbit flat"), o.is_flat());
        r.holds(&format!("{name}: direct-sum determinant nonzero"), o.direct_sum_determinant() != int(0));
        let mut rng = streams.stream(&format!("cocycle/{name}"));
        let mut cocycle = true;
        let mut radial = true;
        for _ in 0..100 {
            let (x, y, z) = (random_vec(&mut rng, d, 3, 4), random_vec(&mut rng, d, 3, 4), random_vec(&mut rng, d, 3, 4));
            cocycle &= o.verify_cocycle_identity(&x, &y, &z)?;
            let (l, m) = (random_rational(&mut rng, 5, 3), random_rational(&mut rng, 5, 3));
            radial &= o.alpha(&scale_vec(&x, &l), &scale_vec(&x, &m))? == int(0);
        }
        r.holds(&format!("{name}: additive cocycle identity on 100 samples"), cocycle);
        r.holds(&format!("{name}: alpha(lx, mx) = 0 on 100 samples"), radial);
    }
    Ok(())
}

fn nonzero_rational<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    loop {
        let q = random_rational(rng, 5, 4);
        if q != int(0) {
            return q;
        }
    }
}

/// The worked families: `g0(s,t)`, central extensions, graphs and the 7-step algebra.
pub fn examples(r: &mut Report, seed: u64) -> Result<()> {
    let mut rng = Streams::new(seed).stream("examples/g0st");
    let mut cocycle = true;
    let mut nondeg = true;
    let mut center = true;
    let mut step = true;
    for _ in 0..20 {
        let (s, t) = (nonzero_rational(&mut rng), nonzero_rational(&mut rng));
        let (alg, form) = catalog::g0st(s, t)?;
        cocycle &= is_two_cocycle(&alg, &form)?;
        nondeg &= form.is_nondegenerate();
        let ext = central_extension(&alg, &form)?;
        center &= ext.center().dim() == 1;
        step &= ext.nilpotency_step() == alg.nilpotency_step() + 1;
    }
    r.holds("g0(s,t): form is a 2-cocycle for 20 samples", cocycle);
    r.holds("g0(s,t): form nondegenerate for 20 samples", nondeg);
    r.holds("g0(s,t) extensions: center has dimension 1", center);
    r.holds("g0(s,t) extensions: step increases by 1", step);

    let others = [
        ("nonhomog", catalog::nonhomog(), catalog::nonhomog_form(int(1), int(1))),
        ("triangle", catalog::triangle(), catalog::triangle_form()),
    ];
    for (name, alg, form) in others {
        let ext = central_extension(&alg, &form)?;
        r.holds(&format!("{name} extension: center has dimension 1"), ext.center().dim() == 1);
        r.holds(&format!("{name} extension: step increases by 1"), ext.nilpotency_step() == alg.nilpotency_step() + 1);
    }

    r.holds("triangle graph: symplectic structure exists", symplectic_exists_graph(&Graph::triangle()));
    let v = |s: &str| s.to_string();
    let odd = [
        Graph::new(vec![v("a"), v("b")], vec![(v("a"), v("b"))])?,
        Graph::new(vec![v("a"), v("b"), v("c")], vec![(v("a"), v("b")), (v("b"), v("c"))])?,
        Graph::new(vec![v("a")], vec![])?,
    ];
    let odd_ok = odd.iter().all(|g| (g.vertices().len() + g.edges().len()) % 2 == 1 && !symplectic_exists_graph(g));
    r.holds("odd-dimensional graph algebras: no symplectic structure", odd_ok);

    let alg = catalog::nonhomog();
    let der = derivation_space(&alg);
    let cn = is_characteristically_nilpotent(&alg, &der);
    r.holds("nonhomog: characteristically nilpotent (Engel flag found)", cn.is_nilpotent());
    let zero_diag = der.basis().iter().all(|d| (0..alg.dim()).all(|i| d[i][i] == int(0)));
    r.holds("nonhomog: every derivation has zero diagonal", zero_diag);
    r.measured("nonhomog: derivation space dimension", der.len());

    let samples = [int(0), int(1), rat(-1, 2), int(3), rat(2, 5)];
    let mut iff = true;
    for a in &samples {
        for b in &samples {
            let nd = catalog::nonhomog_form(a.clone(), b.clone()).is_nondegenerate();
            iff &= nd == (*a != int(0) && *b != int(0));
        }
    }
    r.holds("nonhomog_form(a,b) nondegenerate iff ab != 0 on a 5x5 sample", iff);
    Ok(())
}

/// Heisenberg Pedersen calculus at `L = 8`, `N = 128`.
pub fn pedersen(r: &mut Report) -> Result<()> {
    pedersen_at(r, 8.0, 128)
}

pub fn pedersen_at(r: &mut Report, half_width: f64, n: usize) -> Result<()> {
    r.catalog_id("h3");
    let calc = PedersenCalculus::calibrate(half_width, n)?;
    let group = h3_group()?;
    r.measured("calibrated rho * 2 pi", calc.rho() * 2.0 * std::f64::consts::PI);
    let fam = symbols::hermite_family(*calc.plane());
    let (mut adj, mut hom, mut tr, mut iso, mut inv) = (0f64, 0f64, 0f64, 0f64, 0f64);
    for k in 0..fam.len() {
        let res = verify_pedersen_identities(&calc, &group, &fam[k], &fam[(k + 1) % fam.len()])?;
        adj = adj.max(res.adjoint);
        hom = hom.max(res.homomorphism);
        tr = tr.max(res.trace);
        iso = iso.max(res.isometry);
        let back = calc.inverse(&calc.transform(&fam[k])?)?;
        inv = inv.max(back.sub(&fam[k])?.l2_norm() / fam[k].l2_norm());
    }
    r.at_most("trace identity |Tr T(b) - b(0)| / (1 + |b(0)|)", tr, 1e-3);
    r.at_most("HS isometry relative error", iso, 1e-3);
    r.at_most("adjoint identity HS residual", adj, 1e-8);
    r.at_most("homomorphism residual / (|a| |b|)", hom, 1e-3);
    r.at_most("inversion round trip relative L2 error", inv, 1e-3);

    let h = calc.plane().spacing();
    let tests: Vec<_> = [-0.5, 0.0, 0.75].iter().map(|&c| line_gaussian(calc.line(), c)).collect();
    let shifts = [([h, 0.0], [0.0, h]), ([2.0 * h, -h], [-h, 3.0 * h]), ([-3.0 * h, 2.0 * h], [h, h])];
    let mut ccr: f64 = 0.0;
    for (u, v) in shifts {
        ccr = ccr.max(ccr_phase_check(&calc, &group, u, v, &tests)?);
    }
    r.at_most("CCR phase residual on lattice shifts", ccr, 1e-10);

    let mut worst: f64 = 0.0;
    for i in 0..fam.len() {
        for j in i + 1..fam.len() {
            let ab = twisted_convolve(&group, &fam[i], &fam[j])?;
            worst = worst.max(ab.l2_norm() / (fam[i].l2_norm() * fam[j].l2_norm()));
        }
    }
    r.at_most("L2 submultiplicativity ratio over 10 pairs", worst, 1.0 + 1e-6);

    let (a, b, c) = (&fam[1], &fam[2], &fam[3]);
    let left = twisted_convolve(&group, &twisted_convolve(&group, a, b)?, c)?;
    let right = twisted_convolve(&group, a, &twisted_convolve(&group, b, c)?)?;
    let assoc = left.sub(&right)?.l2_norm() / (a.l2_norm() * b.l2_norm() * c.l2_norm());
    r.at_most("twisted convolution associativity / (|a| |b| |c|)", assoc, 1e-2);
    Ok(())
}

/// Nonnegative test functions for the decomposition.
pub fn cz_test_functions(grid: &Grid) -> Vec<(&'static str, Vec<f64>)> {
    let pts: Vec<Vec<f64>> = (0..grid.len()).map(|i| grid.point(i)).collect();
    let bump = |x: &[f64], c: [f64; 2], s: f64| (-((x[0] - c[0]).powi(2) + (x[1] - c[1]).powi(2)) / (2.0 * s * s)).exp();
    vec![
        ("single bump", pts.iter().map(|x| 4.0 * bump(x, [0.0, 0.0], 0.3)).collect()),
        ("two bumps", pts.iter().map(|x| 6.0 * bump(x, [1.5, -1.0], 0.2) + 2.0 * bump(x, [-2.0, 1.0], 0.5)).collect()),
        (
            "ridged plateau",
            pts.iter()
                .map(|x| if x[0].abs() < 2.0 && x[1].abs() < 1.0 { 1.0 + (3.0 * x[0]).sin().abs() } else { 0.0 })
                .collect(),
        ),
    ]
}

pub fn calibrated_metric(group: &PredualGroup, seed: u64) -> Result<PseudoDistance> {
    let mut m = PseudoDistance::default_for(group);
    m.calibrate(&mut Streams::new(seed).stream("cz/calibration"), 4000)?;
    Ok(m)
}

/// Covering, decomposition, weak-(1,1) and Hörmander checks on the `h3` predual.
pub fn cz_suite(r: &mut Report, seed: u64) -> Result<()> {
    r.catalog_id("h3");
    let group = h3_group()?;
    let m = calibrated_metric(&group, seed)?;
    r.measured("pseudo-distance C_m", m.c_m()).measured("doubling constant", m.doubling());
    let grid = Grid::new(2, 8.0, 128)?;

    for (fname, f) in cz_test_functions(&grid) {
        let fmax = f.iter().cloned().fold(0.0, f64::max);
        for level in [0.25, 0.5, 0.75] {
            let tag = format!("{fname}, alpha = {level} max f");
            let cov = cz::cz_cover(&f, level * fmax, &m, &grid)?;
            let dec = cz::cz_decompose(&f, Some(&cov), &group, &grid)?;
            let c = &dec.checks;
            r.holds(&format!("{tag}: f <= alpha off the balls"), c.below_level_outside && cov.covers_level_set);
            r.at_most(&format!("{tag}: reconstruction f = g + sum b_i"), c.reconstruction, 1e-12);
            r.at_most(&format!("{tag}: twisted mean zero / |f|_1"), c.mean_zero, 1e-12);
            r.holds(&format!("{tag}: bad parts supported in their balls"), c.support_contained);
            r.holds(&format!("{tag}: C' finite"), cov.c_prime.is_finite());
            r.holds(&format!("{tag}: C'' finite"), c.c_double_prime.is_finite());
            r.at_most(&format!("{tag}: overlap M"), cov.overlap as f64, 64.0);
            r.measured(&format!("{tag}: balls"), cov.balls.len());
            r.measured(&format!("{tag}: C'"), cov.c_prime);
            r.measured(&format!("{tag}: C''"), c.c_double_prime);
        }
    }

    let k = cz::truncated_power(grid, 2.0, 0.5, 4.0);
    let f = symbols::approximate_identity(grid, vec![0.0, 0.0], 0.15);
    let levels = [0.125, 0.25, 0.5, 1.0];
    let w = cz::weak11_empirical(&group, &k, &f, &levels)?;
    for l in &w.levels {
        r.measured(&format!("weak-(1,1) ratio at alpha = {}", l.alpha), l.ratio);
    }
    r.measured("weak-(1,1) empirical A_1", w.a1);
    r.at_most("weak-(1,1) ratio spread over 3 dyadic decades", w.spread, 4.0);
    r.holds("weak-(1,1) 2f / 2 alpha scaling exact", cz::weak11_scaling_check(&group, &k, &f, &levels)?);

    let c2 = 4.0 * m.c_m();
    let mut est = Vec::new();
    for n in [128, 256] {
        let g = Grid::new(2, 8.0, n)?;
        let e = cz::hormander_twist_estimate(&cz::truncated_power(g, 3.0, 1.0, 4.0), &m, c2, &g)?;
        r.measured(&format!("Hörmander twist estimate, N = {n}"), e.value);
        est.push(e.value);
    }
    r.at_most("Hörmander estimate relative change under refinement", (est[0] - est[1]).abs() / est[1], 0.1);
    Ok(())
}

/// Multiplier identities and the circle-lift maps.
pub fn multiplier(r: &mut Report) -> Result<()> {
    r.catalog_id("h3");
    let calc = PedersenCalculus::calibrate(8.0, 128)?;
    let group = h3_group()?;
    let plane = *calc.plane();
    let fam = symbols::hermite_family(plane);

    let cases = [
        ("approximate identity", symbols::approximate_identity(plane, vec![0.0, 0.0], 0.1), 1e-2),
        ("u = 0", SampledSymbol::zeros(plane), 1e-10),
    ];
    for (name, u, tol) in cases {
        let rep = cz::multiplier_check(&calc, &group, &u, &fam)?;
        let max = |v: &[f64]| v.iter().cloned().fold(0.0, f64::max);
        r.at_most(&format!("{name}: T(C_M phi) = M T(phi) residual"), max(&rep.definition), tol);
        r.at_most(&format!("{name}: C_M(phi * psi) = (C_M phi) * psi residual"), max(&rep.associativity), tol);
        r.at_most(&format!("{name}: left-delta superposition route residual"), max(&rep.superposition), tol);
        r.at_most(&format!("{name}: agreement with Pedersen identity checker"), rep.route_agreement, 1e-10);
        r.measured(&format!("{name}: |M T(phi) - T(phi)| / |T(phi)|"), max(&rep.identity_defect));
    }

    let u = cz::truncated_power(plane, 1.5, 0.25, 2.0);
    let l1 = u.l1_norm();
    r.measured("truncated power multiplier |u|_1", l1);
    for (p, ratio) in cz::lp_ratios(&group, &u, &fam, &[1.25, 1.5, 2.0])? {
        r.at_most(&format!("L^{p} ratio |u * phi|_p / |phi|_p bounded by |u|_1"), ratio, l1 * (1.0 + 1e-9));
    }

    let grid = Grid::new(2, 8.0, 64)?;
    let psi = symbols::hermite_gaussian(grid, 1, 1, [0.3, -0.2], 0.8);
    let lifted = cz::sharp_map(&psi, cz::DEFAULT_ANGLES)?;
    r.at_most("(psi sharp) flat = psi", cz::flat_map(&lifted)?.sub(&psi)?.max_abs(), 1e-12);
    let phi = cz::TorusGridFunction::from_fn(cz::DEFAULT_ANGLES, grid, |t, x| {
        let g = (-(x[0] * x[0] + x[1] * x[1]) / 2.0).exp();
        (t * t * x[1] + Complex64::new(0.5, -0.25) + t.conj() * x[0] + t.powi(3)) * g
    })?;
    let p = cz::proj_p(&phi)?;
    let flat_sharp = cz::sharp_map(&cz::flat_map(&phi)?, cz::DEFAULT_ANGLES)?;
    r.at_most("(phi flat) sharp = P phi", flat_sharp.max_abs_diff(&p)?, 1e-12);
    r.at_most("P idempotent", cz::proj_p(&p)?.max_abs_diff(&p)?, 1e-12);
    let mut iso: f64 = 0.0;
    for q in [1.0, 1.25, 1.5, 2.0, 4.0] {
        iso = iso.max((lifted.lp_norm(q) - psi.lp_norm(q)).abs() / psi.lp_norm(q));
    }
    r.at_most("sharp isometric in discrete L^p (relative, rounding only)", iso, 1e-14);
    Ok(())
}

use nilharm::catalog;
use nilharm::cz::PseudoDistance;
use nilharm::lie::StructureTable;
use nilharm::orbit::OrbitData;
use nilharm::rational::{int, neg_vec, rat, scale_vec, unit_vec, zero_vec};
use nilharm::twist::{twisted_convolve, twisted_convolve_direct, Grid, PredualGroup, SampledSymbol};
use nilharm::{LieAlgebra, Rational};
use num_complex::Complex64;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| rat(p, q))
}

fn vector(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(rational(), n)
}

type Matrix = Vec<Vec<Rational>>;

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| &a[i][k] * &b[k][j]).sum()).collect())
        .collect()
}

fn mat_add(a: &Matrix, b: &Matrix, s: &Rational) -> Matrix {
    a.iter().zip(b).map(|(r, q)| r.iter().zip(q).map(|(x, y)| x + s * y).collect()).collect()
}

fn identity(n: usize) -> Matrix {
    (0..n).map(|i| unit_vec(n, i)).collect()
}

/// Strictly upper triangular `n × n` matrices, basis `E_ij` (i < j) in row-major order.
struct UpperTriangular {
    n: usize,
    pairs: Vec<(usize, usize)>,
}

impl UpperTriangular {
    fn new(n: usize) -> Self {
        let pairs = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        Self { n, pairs }
    }

    fn algebra(&self) -> LieAlgebra {
        let index = |p: (usize, usize)| self.pairs.iter().position(|&q| q == p);
        let mut table = StructureTable::new(self.pairs.len());
        for (a, &(i, j)) in self.pairs.iter().enumerate() {
            for (b, &(k, l)) in self.pairs.iter().enumerate().skip(a + 1) {
                // [E_ij, E_kl] = δ_jk E_il - δ_li E_kj
                let mut terms = Vec::new();
                if j == k {
                    terms.push((index((i, l)).unwrap(), int(1)));
                }
                if l == i {
                    terms.push((index((k, j)).unwrap(), int(-1)));
                }
                if !terms.is_empty() {
                    table.set(a, b, terms);
                }
            }
        }
        LieAlgebra::validate(table).unwrap()
    }

    fn matrix(&self, v: &[Rational]) -> Matrix {
        let mut m = vec![zero_vec(self.n); self.n];
        for (c, &(i, j)) in v.iter().zip(&self.pairs) {
            m[i][j] = c.clone();
        }
        m
    }

    fn coords(&self, m: &Matrix) -> Vec<Rational> {
        self.pairs.iter().map(|&(i, j)| m[i][j].clone()).collect()
    }

    fn exp(&self, x: &Matrix) -> Matrix {
        let mut out = identity(self.n);
        let mut power = identity(self.n);
        let mut fact = int(1);
        for k in 1..self.n {
            power = mat_mul(&power, x);
            fact *= int(k as i64);
            out = mat_add(&out, &power, &fact.recip());
        }
        out
    }

    /// `log(I + N)` for nilpotent `N`.
    fn log(&self, g: &Matrix) -> Matrix {
        let nil = mat_add(g, &identity(self.n), &int(-1));
        let mut out = vec![zero_vec(self.n); self.n];
        let mut power = identity(self.n);
        for k in 1..self.n {
            power = mat_mul(&power, &nil);
            let sign = if k % 2 == 1 { int(1) } else { int(-1) };
            out = mat_add(&out, &power, &(sign / int(k as i64)));
        }
        out
    }
}

fn flat_orbit(alg: &LieAlgebra) -> OrbitData {
    OrbitData::new(alg, &unit_vec(alg.dim(), 0)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn bch_matches_matrix_exp_log(x in vector(10), y in vector(10)) {
        let ut = UpperTriangular::new(5);
        let alg = ut.algebra();
        prop_assert_eq!(alg.nilpotency_step(), 4);
        let product = ut.coords(&ut.log(&mat_mul(&ut.exp(&ut.matrix(&x)), &ut.exp(&ut.matrix(&y)))));
        prop_assert_eq!(alg.bch_product(&x, &y).unwrap(), product);
    }

    #[test]
    fn bch_group_axioms_on_nonhomog(x in vector(8), y in vector(8), z in vector(8)) {
        let alg = catalog::nonhomog();
        let xy_z = alg.bch_product(&alg.bch_product(&x, &y).unwrap(), &z).unwrap();
        let x_yz = alg.bch_product(&x, &alg.bch_product(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(xy_z, x_yz);
        prop_assert_eq!(alg.bch_product(&x, &neg_vec(&x)).unwrap(), zero_vec(8));
        prop_assert_eq!(alg.bch_product(&zero_vec(8), &y).unwrap(), y);
    }

    #[test]
    fn jacobi_on_random_triples(x in vector(9), y in vector(9), z in vector(9)) {
        let alg = catalog::ext_nonhomog(int(1), int(1)).unwrap();
        prop_assert!(alg.jacobi_residual(&x, &y, &z).iter().all(|c| *c == int(0)));
    }

    #[test]
    fn cocycle_identity_and_radial_vanishing(
        x in vector(6), y in vector(6), z in vector(6), l in rational(), m in rational()
    ) {
        let o = flat_orbit(&catalog::ext_g0st(int(1), int(1)).unwrap());
        prop_assert_eq!(o.d(), 6);
        prop_assert!(o.verify_cocycle_identity(&x, &y, &z).unwrap());
        prop_assert_eq!(o.alpha(&scale_vec(&x, &l), &scale_vec(&x, &m)).unwrap(), int(0));
    }

    #[test]
    fn compiled_group_law_matches_bch_route(x in vector(6), y in vector(6)) {
        let o = flat_orbit(&catalog::ext_triangle());
        let g = PredualGroup::from_orbit(&o).unwrap();
        let (a, p) = o.split_product(&x, &y).unwrap();
        prop_assert_eq!(g.alpha_exact(&x, &y), a);
        prop_assert_eq!(g.product_exact(&x, &y), p);
    }

    #[test]
    fn pseudo_distance_is_symmetric_and_definite(x in prop::collection::vec(-4.0f64..4.0, 6)) {
        let o = flat_orbit(&catalog::ext_g0st(int(1), int(1)).unwrap());
        let m = PseudoDistance::default_for(&PredualGroup::from_orbit(&o).unwrap());
        let nx: Vec<f64> = x.iter().map(|c| -c).collect();
        prop_assert_eq!(m.eval(&x), m.eval(&nx));
        prop_assert_eq!(m.eval(&[0.0; 6]), 0.0);
        prop_assert!(x.iter().all(|c| *c == 0.0) || m.eval(&x) > 0.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn fast_and_direct_convolution_agree(
        c1 in (-1.0f64..1.0, -1.0f64..1.0), c2 in (-1.0f64..1.0, -1.0f64..1.0), w in 0.5f64..1.5
    ) {
        let g = PredualGroup::from_orbit(&flat_orbit(&catalog::h3())).unwrap();
        let grid = Grid::new(2, 4.0, 16).unwrap();
        let bump = |c: (f64, f64), w: f64| {
            SampledSymbol::from_fn(grid, move |x| {
                let r2 = (x[0] - c.0).powi(2) + (x[1] - c.1).powi(2);
                let e = (-r2 / w).exp();
                Complex64::new(e, 0.3 * (x[0] - c.1) * e)
            })
        };
        let (a, b) = (bump(c1, w), bump(c2, 1.0 / w));
        let fast = twisted_convolve(&g, &a, &b).unwrap();
        let slow = twisted_convolve_direct(&g, &a, &b).unwrap();
        prop_assert!(fast.sub(&slow).unwrap().max_abs() <= 1e-12 * (1.0 + slow.max_abs()));
    }
}

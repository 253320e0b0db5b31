//! Coadjoint orbit data over a fixed functional and the polynomial cocycle.

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lie::{jordan_holder_flag, FlagSequence, LieAlgebra};
use crate::linalg::{self, Subspace};
use crate::rational::{dot, neg_vec, scale_vec, to_f64, zero_vec, Rational};

/// Isotropy algebra `{X : ξ0([X, ·]) = 0}`.
pub fn isotropy_algebra(alg: &LieAlgebra, xi0: &[Rational]) -> Result<Subspace> {
    alg.check_len(xi0)?;
    let n = alg.dim();
    let b: Vec<Vec<Rational>> =
        (0..n).map(|i| (0..n).map(|j| dot(xi0, &alg.basis_bracket(i, j))).collect()).collect();
    Ok(Subspace::span(n, linalg::nullspace(&b, n)))
}

/// Orbit through `ξ0` with an adapted flag, jump indices and the predual `g_e`.
#[derive(Debug, Clone)]
pub struct OrbitData {
    algebra: LieAlgebra,
    flag: FlagSequence,
    xi0: Vec<Rational>,
    isotropy: Subspace,
    jump_set: Vec<usize>,
    flat: bool,
    // Inverse of the flag matrix: ambient coordinates to flag coordinates.
    to_flag: Vec<Vec<Rational>>,
}

impl OrbitData {
    /// Uses an explicit flag; requires `<ξ0, X_1> = 1`.
    pub fn with_flag(alg: &LieAlgebra, flag: FlagSequence, xi0: &[Rational]) -> Result<Self> {
        alg.check_len(xi0)?;
        if flag.len() != alg.dim() {
            return Err(Error::DimensionMismatch { expected: alg.dim(), got: flag.len() });
        }
        let p = dot(xi0, &flag.basis()[0]);
        if !p.is_one() {
            return Err(Error::PairingNotOne(p));
        }
        let n = alg.dim();
        let isotropy = isotropy_algebra(alg, xi0)?;
        let jump_set: Vec<usize> = (1..=n)
            .filter(|&j| !flag.ideal(j - 1).sum(&isotropy).contains(&flag.basis()[j - 1]))
            .collect();
        let center = alg.center();
        let flat = center.dim() == 1 && isotropy.dim() == 1 && isotropy.contains_subspace(&center);
        let m = flag.matrix();
        let to_flag = invert(&m);
        Ok(Self { algebra: alg.clone(), flag, xi0: xi0.to_vec(), isotropy, jump_set, flat, to_flag })
    }

    /// Builds the flag with `X_1` the first reduced central vector not annihilated by `ξ0`,
    /// scaled so that `<ξ0, X_1> = 1`.
    pub fn new(alg: &LieAlgebra, xi0: &[Rational]) -> Result<Self> {
        alg.check_len(xi0)?;
        let center = alg.center();
        let x1 = center
            .basis()
            .iter()
            .find(|v| !dot(xi0, v).is_zero())
            .ok_or_else(|| Error::PairingNotOne(Rational::zero()))?;
        let x1 = scale_vec(x1, &dot(xi0, x1).recip());
        let flag = jordan_holder_flag(alg, Some(&x1))?;
        Self::with_flag(alg, flag, xi0)
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn flag(&self) -> &FlagSequence {
        &self.flag
    }

    pub fn xi0(&self) -> &[Rational] {
        &self.xi0
    }

    pub fn isotropy(&self) -> &Subspace {
        &self.isotropy
    }

    /// Jump indices, 1-based positions in the flag.
    pub fn jump_set(&self) -> &[usize] {
        &self.jump_set
    }

    /// `d = |e|`.
    pub fn d(&self) -> usize {
        self.jump_set.len()
    }

    pub fn is_flat(&self) -> bool {
        self.flat
    }

    /// Predual basis vectors in ambient coordinates.
    pub fn predual_basis(&self) -> Vec<Vec<Rational>> {
        self.jump_set.iter().map(|&j| self.flag.basis()[j - 1].clone()).collect()
    }

    /// Determinant of `[isotropy basis | predual basis]`.
    pub fn direct_sum_determinant(&self) -> Rational {
        let mut cols: Vec<Vec<Rational>> = self.isotropy.basis().to_vec();
        cols.extend(self.predual_basis());
        if cols.len() != self.algebra.dim() {
            return Rational::zero();
        }
        linalg::determinant(&linalg::transpose(&cols, self.algebra.dim()))
    }

    /// Ambient coordinates of a predual point.
    pub fn embed(&self, x: &[Rational]) -> Vec<Rational> {
        let n = self.algebra.dim();
        let mut out = zero_vec(n);
        for (c, v) in x.iter().zip(self.predual_basis()) {
            for k in 0..n {
                out[k] += c * &v[k];
            }
        }
        out
    }

    /// Flag coordinates of an ambient vector.
    pub fn flag_coordinates(&self, v: &[Rational]) -> Vec<Rational> {
        linalg::mat_vec(&self.to_flag, v)
    }

    pub(crate) fn to_flag_matrix(&self) -> &[Vec<Rational>] {
        &self.to_flag
    }

    fn require_flat(&self) -> Result<()> {
        if self.flat {
            Ok(())
        } else {
            Err(Error::NotFlat)
        }
    }

    fn check_predual(&self, x: &[Rational]) -> Result<()> {
        if x.len() != self.d() {
            return Err(Error::DimensionMismatch { expected: self.d(), got: x.len() });
        }
        Ok(())
    }

    /// Splits `x · y` along `g = span{X_1} ⊕ g_e`: (central coefficient, predual part).
    pub fn split_product(&self, x: &[Rational], y: &[Rational]) -> Result<(Rational, Vec<Rational>)> {
        self.require_flat()?;
        self.check_predual(x)?;
        self.check_predual(y)?;
        let z = self.algebra.bch_product(&self.embed(x), &self.embed(y))?;
        let c = self.flag_coordinates(&z);
        let predual = self.jump_set.iter().map(|&j| c[j - 1].clone()).collect();
        Ok((c[0].clone(), predual))
    }

    /// `x ·_e y`.
    pub fn product_e(&self, x: &[Rational], y: &[Rational]) -> Result<Vec<Rational>> {
        Ok(self.split_product(x, y)?.1)
    }

    /// `α(x, y)`: the `X_1`-coefficient of `x · y`.
    pub fn alpha(&self, x: &[Rational], y: &[Rational]) -> Result<Rational> {
        Ok(self.split_product(x, y)?.0)
    }

    /// `α(x,y) + α(x·y, z) - α(x, y·z) - α(y,z)`.
    pub fn cocycle_residual(&self, x: &[Rational], y: &[Rational], z: &[Rational]) -> Result<Rational> {
        let (a_xy, xy) = self.split_product(x, y)?;
        let (a_yz, yz) = self.split_product(y, z)?;
        Ok(a_xy + self.alpha(&xy, z)? - self.alpha(x, &yz)? - a_yz)
    }

    pub fn verify_cocycle_identity(&self, x: &[Rational], y: &[Rational], z: &[Rational]) -> Result<bool> {
        Ok(self.cocycle_residual(x, y, z)?.is_zero())
    }

    /// The five unit-cocycle identities, exactly in additive form and in floating point for `γ = e^{iα}`.
    pub fn gamma_identities(&self, x: &[Rational], y: &[Rational], z: &[Rational]) -> Result<GammaReport> {
        let a = |u: &[Rational], v: &[Rational]| self.alpha(u, v);
        let p = |u: &[Rational], v: &[Rational]| self.product_e(u, v);
        let (nx, ny, nz) = (neg_vec(x), neg_vec(y), neg_vec(z));
        // Each identity is lhs = rhs with lhs, rhs sums of α values.
        let pairs: [(Vec<Rational>, Vec<Rational>); 5] = [
            (vec![a(x, y)?, a(&p(x, y)?, z)?], vec![a(x, &p(y, z)?)?, a(y, z)?]),
            (vec![a(&ny, &nx)?], vec![-a(x, y)?]),
            (vec![a(&p(x, &ny)?, y)?], vec![-a(x, &ny)?]),
            (vec![a(x, &p(&nx, y)?)?], vec![-a(&nx, y)?]),
            (vec![a(x, &nz)?, a(&p(x, &nz)?, &p(z, &ny)?)?], vec![a(x, &ny)?, a(y, &nz)?]),
        ];
        let mut exact = [false; 5];
        let mut float = [0.0; 5];
        for (k, (lhs, rhs)) in pairs.iter().enumerate() {
            let sl: Rational = lhs.iter().sum();
            let sr: Rational = rhs.iter().sum();
            exact[k] = sl == sr;
            let gl: Complex64 = lhs.iter().map(|t| Complex64::from_polar(1.0, to_f64(t))).product();
            let gr: Complex64 = rhs.iter().map(|t| Complex64::from_polar(1.0, to_f64(t))).product();
            float[k] = (gl - gr).norm();
        }
        Ok(GammaReport { exact, float })
    }
}

/// Outcome of [`OrbitData::gamma_identities`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaReport {
    pub exact: [bool; 5],
    pub float: [f64; 5],
}

impl GammaReport {
    pub fn max_float_residual(&self) -> f64 {
        self.float.iter().cloned().fold(0.0, f64::max)
    }

    pub fn all_hold(&self, tol: f64) -> bool {
        self.exact.iter().all(|&b| b) && self.max_float_residual() <= tol
    }
}

fn invert(m: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = m.len();
    let cols: Vec<Vec<Rational>> = (0..n)
        .map(|k| linalg::solve(m, &crate::rational::unit_vec(n, k)).expect("flag basis is invertible"))
        .collect();
    linalg::transpose(&cols, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::rational::{int, rat, unit_vec};

    #[test]
    fn heisenberg_orbit() {
        let h = catalog::h3();
        let o = OrbitData::new(&h, &unit_vec(3, 0)).unwrap();
        assert_eq!(o.jump_set(), &[2, 3]);
        assert!(o.is_flat());
        assert_eq!(o.isotropy().dim(), 1);
        assert!(!o.direct_sum_determinant().is_zero());
        assert_eq!(o.alpha(&[int(1), int(0)], &[int(0), int(1)]).unwrap(), rat(-1, 2));
        let x = [rat(3, 2), int(-2)];
        let y = [rat(1, 3), int(5)];
        assert_eq!(o.product_e(&x, &y).unwrap(), vec![rat(11, 6), int(3)]);
        // alpha = (x3 y2 - x2 y3)/2
        assert_eq!(o.alpha(&x, &y).unwrap(), (int(-2) * rat(1, 3) - rat(3, 2) * int(5)) / int(2));
    }

    #[test]
    fn abelian_is_not_flat() {
        let a = catalog::abelian(3);
        let o = OrbitData::new(&a, &unit_vec(3, 0)).unwrap();
        assert!(o.jump_set().is_empty());
        assert!(!o.is_flat());
        assert_eq!(o.isotropy().dim(), 3);
        assert!(matches!(o.alpha(&[], &[]), Err(Error::NotFlat)));
    }

    #[test]
    fn pairing_must_be_one() {
        let h = catalog::h3();
        let flag = jordan_holder_flag(&h, Some(&unit_vec(3, 0))).unwrap();
        assert!(matches!(
            OrbitData::with_flag(&h, flag, &[int(2), int(0), int(0)]),
            Err(Error::PairingNotOne(_))
        ));
        assert!(matches!(OrbitData::new(&h, &unit_vec(3, 1)), Err(Error::PairingNotOne(_))));
    }

    #[test]
    fn extension_orbit_is_flat() {
        let g = catalog::ext_g0st(int(1), int(1)).unwrap();
        let o = OrbitData::new(&g, &unit_vec(7, 0)).unwrap();
        assert_eq!(o.jump_set(), &[2, 3, 4, 5, 6, 7]);
        assert!(o.is_flat());
        assert_eq!(o.isotropy().basis(), &[unit_vec(7, 0)]);
    }

    #[test]
    fn gamma_identities_at_zero() {
        let o = OrbitData::new(&catalog::h3(), &unit_vec(3, 0)).unwrap();
        let z = zero_vec(2);
        assert!(o.gamma_identities(&z, &z, &z).unwrap().all_hold(0.0));
    }
}

//! Nilpotent Lie algebras given by exact rational structure constants.

mod bch;
mod derivation;
mod flag;

use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{self, Subspace};
use crate::rational::{unit_vec, zero_vec, Rational};

pub use bch::{BchTable, BchWord};
pub use derivation::{
    derivation_space, is_characteristically_nilpotent, is_nilpotent_matrix, CharNilpotency, DerivationSpace,
};
pub use flag::{jordan_holder_flag, FlagDefect, FlagSequence};

/// Coefficient ring for brackets and group products: exact rationals, or
/// polynomials in symbolic coordinates.
pub trait Coeff: Clone {
    fn vanishing() -> Self;
    fn vanishes(&self) -> bool;
    fn add_assign(&mut self, other: &Self);
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn scale(&self, c: &Rational) -> Self;
    fn from_rational(c: &Rational) -> Self;
}

impl Coeff for Rational {
    fn vanishing() -> Self {
        Zero::zero()
    }
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_assign(&mut self, other: &Self) {
        *self += other;
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, c: &Rational) -> Self {
        self * c
    }
    fn from_rational(c: &Rational) -> Self {
        c.clone()
    }
}

/// One structure-constant entry `[X_i, X_j] = sum_k c_k X_k` with `i < j` (0-based).
#[derive(Debug, Clone, PartialEq)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub terms: Vec<(usize, Rational)>,
}

/// Unvalidated input table.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct StructureTable {
    pub dim: usize,
    pub brackets: Vec<BracketEntry>,
    pub labels: Vec<String>,
}

impl StructureTable {
    pub fn new(dim: usize) -> Self {
        Self { dim, brackets: Vec::new(), labels: Vec::new() }
    }

    /// Adds `[X_i, X_j] = sum c X_k` using 0-based indices; `i > j` is stored negated.
    pub fn set(&mut self, i: usize, j: usize, terms: Vec<(usize, Rational)>) -> &mut Self {
        if i < j {
            self.brackets.push(BracketEntry { i, j, terms });
        } else {
            let terms = terms.into_iter().map(|(k, c)| (k, -c)).collect();
            self.brackets.push(BracketEntry { i: j, j: i, terms });
        }
        self
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        self.labels = labels;
        self
    }
}

#[derive(Debug, Clone)]
struct Constant {
    i: usize,
    j: usize,
    terms: Vec<(usize, Rational)>,
}

/// A validated nilpotent Lie algebra. Immutable after construction.
#[derive(Debug, Clone)]
pub struct LieAlgebra {
    dim: usize,
    labels: Vec<String>,
    constants: Vec<Constant>,
    series: Vec<Subspace>,
    bch: Arc<BchTable>,
}

impl LieAlgebra {
    /// Checks index ranges, pair order, duplicates, Jacobi on every basis
    /// triple and nilpotency.
    pub fn validate(table: StructureTable) -> Result<Self> {
        let n = table.dim;
        if n == 0 {
            return Err(Error::DimensionMismatch { expected: 1, got: 0 });
        }
        let mut seen = std::collections::BTreeSet::new();
        let mut constants = Vec::new();
        for b in table.brackets {
            for idx in [b.i, b.j] {
                if idx >= n {
                    return Err(Error::IndexOutOfRange { index: idx + 1, dim: n });
                }
            }
            if b.i >= b.j {
                return Err(Error::PairOrder { i: b.i + 1, j: b.j + 1 });
            }
            if !seen.insert((b.i, b.j)) {
                return Err(Error::DuplicatePair { i: b.i + 1, j: b.j + 1 });
            }
            let mut dense = zero_vec(n);
            for (k, c) in b.terms {
                if k >= n {
                    return Err(Error::IndexOutOfRange { index: k + 1, dim: n });
                }
                dense[k] += c;
            }
            let terms: Vec<(usize, Rational)> = dense
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .collect();
            if !terms.is_empty() {
                constants.push(Constant { i: b.i, j: b.j, terms });
            }
        }
        let labels = if table.labels.len() == n {
            table.labels
        } else {
            (1..=n).map(|k| format!("X{k}")).collect()
        };
        let mut alg = LieAlgebra {
            dim: n,
            labels,
            constants,
            series: Vec::new(),
            bch: Arc::new(BchTable::new(0)),
        };
        if let Some((i, j, k, residual)) = alg.first_jacobi_violation() {
            return Err(Error::JacobiViolation { i: i + 1, j: j + 1, k: k + 1, residual });
        }
        let series = alg.compute_series()?;
        let step = series.len() - 1;
        alg.series = series;
        alg.bch = Arc::new(BchTable::new(step));
        Ok(alg)
    }

    pub fn abelian(n: usize) -> Self {
        Self::validate(StructureTable::new(n)).expect("abelian algebra is valid")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Structure table with 0-based indices, `i < j`.
    pub fn table(&self) -> StructureTable {
        StructureTable {
            dim: self.dim,
            brackets: self
                .constants
                .iter()
                .map(|c| BracketEntry { i: c.i, j: c.j, terms: c.terms.clone() })
                .collect(),
            labels: self.labels.clone(),
        }
    }

    /// Coefficients of `[X_i, X_j]` for any ordered pair.
    pub fn basis_bracket(&self, i: usize, j: usize) -> Vec<Rational> {
        let mut out = zero_vec(self.dim);
        if i == j {
            return out;
        }
        let (a, b, sign) = if i < j { (i, j, 1) } else { (j, i, -1) };
        if let Some(c) = self.constants.iter().find(|c| c.i == a && c.j == b) {
            for (k, v) in &c.terms {
                out[*k] = if sign > 0 { v.clone() } else { -v.clone() };
            }
        }
        out
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Result<Vec<Rational>> {
        self.check_len(x)?;
        self.check_len(y)?;
        Ok(self.bracket_generic(x, y))
    }

    pub(crate) fn check_len<T>(&self, x: &[T]) -> Result<()> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: x.len() });
        }
        Ok(())
    }

    /// Bilinear bracket over any coefficient ring; lengths are assumed correct.
    pub fn bracket_generic<C: Coeff>(&self, x: &[C], y: &[C]) -> Vec<C> {
        let mut out = vec![C::vanishing(); self.dim];
        for c in &self.constants {
            let (xi, xj, yi, yj) = (&x[c.i], &x[c.j], &y[c.i], &y[c.j]);
            let lhs = if xi.vanishes() || yj.vanishes() { C::vanishing() } else { xi.mul(yj) };
            let rhs = if xj.vanishes() || yi.vanishes() { C::vanishing() } else { xj.mul(yi) };
            let w = lhs.sub(&rhs);
            if w.vanishes() {
                continue;
            }
            for (k, v) in &c.terms {
                out[*k].add_assign(&w.scale(v));
            }
        }
        out
    }

    fn first_jacobi_violation(&self) -> Option<(usize, usize, usize, Vec<Rational>)> {
        let n = self.dim;
        let e = |i| unit_vec(n, i);
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let t1 = self.bracket_generic(&e(i), &self.basis_bracket(j, k));
                    let t2 = self.bracket_generic(&e(j), &self.basis_bracket(k, i));
                    let t3 = self.bracket_generic(&e(k), &self.basis_bracket(i, j));
                    let r: Vec<Rational> = (0..n).map(|m| &t1[m] + &t2[m] + &t3[m]).collect();
                    if !crate::rational::is_zero_vec(&r) {
                        return Some((i, j, k, r));
                    }
                }
            }
        }
        None
    }

    /// Jacobi residual of three arbitrary elements.
    pub fn jacobi_residual(&self, x: &[Rational], y: &[Rational], z: &[Rational]) -> Vec<Rational> {
        let a = self.bracket_generic(x, &self.bracket_generic(y, z));
        let b = self.bracket_generic(y, &self.bracket_generic(z, x));
        let c = self.bracket_generic(z, &self.bracket_generic(x, y));
        (0..self.dim).map(|m| &a[m] + &b[m] + &c[m]).collect()
    }

    /// `[g, S]` for a subspace `S`.
    pub fn bracket_with_algebra(&self, s: &Subspace) -> Subspace {
        let n = self.dim;
        let vecs = (0..n).flat_map(|i| {
            let ei = unit_vec(n, i);
            s.basis().iter().map(move |v| self.bracket_generic(&ei, v)).collect::<Vec<_>>()
        });
        Subspace::span(n, vecs.filter(|v| !crate::rational::is_zero_vec(v)))
    }

    fn compute_series(&self) -> Result<Vec<Subspace>> {
        let mut series = vec![Subspace::full(self.dim)];
        loop {
            let last = series.last().expect("nonempty");
            if last.is_zero() {
                return Ok(series);
            }
            let next = self.bracket_with_algebra(last);
            if next.dim() == last.dim() {
                return Err(Error::NotNilpotent { stable_dim: next.dim() });
            }
            series.push(next);
        }
    }

    /// `g^0 = g, g^k = [g, g^{k-1}]`, ending with the zero subspace.
    pub fn lower_central_series(&self) -> &[Subspace] {
        &self.series
    }

    /// Least `k` with `g^k = 0`.
    pub fn nilpotency_step(&self) -> usize {
        self.series.len() - 1
    }

    pub fn center(&self) -> Subspace {
        let n = self.dim;
        // v is central iff sum_i v_i [X_i, X_j] = 0 for all j.
        let mut rows = Vec::new();
        for j in 0..n {
            let cols: Vec<Vec<Rational>> = (0..n).map(|i| self.basis_bracket(i, j)).collect();
            for k in 0..n {
                rows.push((0..n).map(|i| cols[i][k].clone()).collect());
            }
        }
        Subspace::span(n, linalg::nullspace(&rows, n))
    }

    pub fn is_central(&self, v: &[Rational]) -> bool {
        let n = self.dim;
        (0..n).all(|i| crate::rational::is_zero_vec(&self.bracket_generic(&unit_vec(n, i), v)))
    }

    /// Matrix of `ad x` acting on column coordinate vectors.
    pub fn ad_matrix(&self, x: &[Rational]) -> Vec<Vec<Rational>> {
        let n = self.dim;
        let cols: Vec<Vec<Rational>> = (0..n).map(|j| self.bracket_generic(x, &unit_vec(n, j))).collect();
        linalg::transpose(&cols, n)
    }

    pub fn bch_table(&self) -> &BchTable {
        &self.bch
    }

    /// Group product `x . y` in exponential coordinates.
    pub fn bch_product(&self, x: &[Rational], y: &[Rational]) -> Result<Vec<Rational>> {
        self.check_len(x)?;
        self.check_len(y)?;
        Ok(self.bch.product(self, x, y))
    }

    /// Group product over an arbitrary coefficient ring.
    pub fn bch_generic<C: Coeff>(&self, x: &[C], y: &[C]) -> Vec<C> {
        self.bch.product(self, x, y)
    }

    /// Whether the structure is abelian.
    pub fn is_abelian(&self) -> bool {
        self.constants.is_empty()
    }
}

/// Pairing of a functional (dual-basis coordinates) with a vector.
pub fn pairing(xi: &[Rational], v: &[Rational]) -> Rational {
    crate::rational::dot(xi, v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::rational::{int, rat};

    #[test]
    fn abelian_is_step_one_and_central() {
        let a = LieAlgebra::abelian(4);
        assert_eq!(a.nilpotency_step(), 1);
        assert_eq!(a.center().dim(), 4);
    }

    #[test]
    fn heisenberg_basics() {
        let h = catalog::h3();
        assert_eq!(h.nilpotency_step(), 2);
        // [X3, X2] = X1
        assert_eq!(h.bracket(&unit_vec(3, 2), &unit_vec(3, 1)).unwrap(), unit_vec(3, 0));
        let c = h.center();
        assert_eq!(c.dim(), 1);
        assert!(c.contains(&unit_vec(3, 0)));
    }

    #[test]
    fn bracket_is_antisymmetric() {
        let h = catalog::nonhomog();
        let x: Vec<Rational> = (0..8).map(|k| rat(k as i64 - 3, 2)).collect();
        let y: Vec<Rational> = (0..8).map(|k| int((k * k) as i64 % 5)).collect();
        let xy = h.bracket(&x, &y).unwrap();
        let yx = h.bracket(&y, &x).unwrap();
        assert!(xy.iter().zip(&yx).all(|(a, b)| a == &-b.clone()));
        assert!(crate::rational::is_zero_vec(&h.bracket(&x, &x).unwrap()));
    }

    #[test]
    fn rejects_non_nilpotent() {
        let mut t = StructureTable::new(3);
        t.set(0, 1, vec![(2, int(1))]).set(0, 2, vec![(1, int(1))]);
        match LieAlgebra::validate(t) {
            Err(Error::NotNilpotent { stable_dim }) => assert_eq!(stable_dim, 2),
            other => panic!("expected NotNilpotent, got {other:?}"),
        }
    }

    #[test]
    fn reports_jacobi_violation() {
        // [X1,X2]=X3, [X3,X4]=X5: the triple (1,2,4) gives [X4,X3] = -X5.
        let mut t = StructureTable::new(5);
        t.set(0, 1, vec![(2, int(1))]).set(2, 3, vec![(4, int(1))]);
        match LieAlgebra::validate(t) {
            Err(Error::JacobiViolation { i, j, k, residual }) => {
                assert_eq!((i, j, k), (1, 2, 4));
                assert_eq!(residual, vec![int(0), int(0), int(0), int(0), int(-1)]);
                assert!(!crate::rational::is_zero_vec(&residual));
            }
            other => panic!("expected JacobiViolation, got {other:?}"),
        }
    }

    #[test]
    fn rejects_bad_input() {
        let mut t = StructureTable::new(3);
        t.brackets.push(BracketEntry { i: 1, j: 0, terms: vec![] });
        assert!(matches!(LieAlgebra::validate(t), Err(Error::PairOrder { .. })));
        let mut t = StructureTable::new(3);
        t.set(0, 1, vec![(2, int(1))]).set(0, 1, vec![(2, int(1))]);
        assert!(matches!(LieAlgebra::validate(t), Err(Error::DuplicatePair { .. })));
        let mut t = StructureTable::new(3);
        t.set(0, 1, vec![(5, int(1))]);
        assert!(matches!(LieAlgebra::validate(t), Err(Error::IndexOutOfRange { .. })));
        let h = catalog::h3();
        assert!(matches!(
            h.bracket(&zero_vec(2), &zero_vec(3)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn nonhomog_series_and_center() {
        let g = catalog::nonhomog();
        assert_eq!(g.nilpotency_step(), 7);
        let c = g.center();
        assert_eq!(c.dim(), 1);
        assert!(c.contains(&unit_vec(8, 7)));
        assert_eq!(
            g.bracket(&unit_vec(8, 1), &unit_vec(8, 2)).unwrap(),
            crate::rational::add_vec(&unit_vec(8, 5), &unit_vec(8, 6))
        );
    }
}

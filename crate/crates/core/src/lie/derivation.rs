//! Derivation algebras and characteristic nilpotency.

use super::LieAlgebra;
use crate::linalg::{self, Subspace};
use crate::rational::{is_zero_vec, unit_vec, zero_vec, Rational};

type Matrix = Vec<Vec<Rational>>;

/// Basis of `Der(g)`; `D[r][c]` is the `X_r` coefficient of `D(X_c)`.
#[derive(Debug, Clone)]
pub struct DerivationSpace {
    dim: usize,
    basis: Vec<Matrix>,
}

impl DerivationSpace {
    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    fn flatten(m: &Matrix) -> Vec<Rational> {
        m.iter().flatten().cloned().collect()
    }

    /// Largest Leibniz residual entry over all basis derivations and basis pairs.
    pub fn leibniz_defect(&self, alg: &LieAlgebra) -> Option<(usize, usize, usize)> {
        let n = self.dim;
        for (a, d) in self.basis.iter().enumerate() {
            for i in 0..n {
                for j in i + 1..n {
                    if !is_zero_vec(&leibniz_residual(alg, d, i, j)) {
                        return Some((a, i, j));
                    }
                }
            }
        }
        None
    }

    /// Whether every commutator of basis elements stays in the span.
    pub fn is_closed_under_commutator(&self) -> bool {
        let n = self.dim;
        let span = Subspace::span(n * n, self.basis.iter().map(Self::flatten));
        for (a, d1) in self.basis.iter().enumerate() {
            for d2 in &self.basis[a + 1..] {
                let ab = linalg::mat_mul(d1, d2);
                let ba = linalg::mat_mul(d2, d1);
                let c: Matrix = ab
                    .iter()
                    .zip(&ba)
                    .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect())
                    .collect();
                if !span.contains(&Self::flatten(&c)) {
                    return false;
                }
            }
        }
        true
    }
}

fn leibniz_residual(alg: &LieAlgebra, d: &Matrix, i: usize, j: usize) -> Vec<Rational> {
    let n = alg.dim();
    let col = |c: usize| -> Vec<Rational> { (0..n).map(|r| d[r][c].clone()).collect() };
    let lhs = linalg::mat_vec(d, &alg.basis_bracket(i, j));
    let r1 = alg.bracket_generic(&col(i), &unit_vec(n, j));
    let r2 = alg.bracket_generic(&unit_vec(n, i), &col(j));
    (0..n).map(|k| &lhs[k] - &r1[k] - &r2[k]).collect()
}

/// Solves `D[X_i,X_j] = [D X_i, X_j] + [X_i, D X_j]` for all `i < j` exactly.
pub fn derivation_space(alg: &LieAlgebra) -> DerivationSpace {
    let n = alg.dim();
    let c: Vec<Vec<Vec<Rational>>> =
        (0..n).map(|i| (0..n).map(|j| alg.basis_bracket(i, j)).collect()).collect();
    let var = |r: usize, col: usize| r * n + col;
    let mut rows = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for r in 0..n {
                let mut row = zero_vec(n * n);
                for k in 0..n {
                    row[var(r, k)] += &c[i][j][k];
                }
                for s in 0..n {
                    row[var(s, i)] -= &c[s][j][r];
                    row[var(s, j)] -= &c[i][s][r];
                }
                if !is_zero_vec(&row) {
                    rows.push(row);
                }
            }
        }
    }
    let basis = linalg::nullspace(&rows, n * n)
        .into_iter()
        .map(|v| v.chunks(n).map(<[Rational]>::to_vec).collect())
        .collect();
    DerivationSpace { dim: n, basis }
}

/// Outcome of the simultaneous triangularization of `Der(g)`.
#[derive(Debug, Clone)]
pub enum CharNilpotency {
    /// Full flag `V_1 ⊂ ... ⊂ V_n` with `D V_k ⊆ V_{k-1}` for every derivation.
    Nilpotent { flag: Vec<Vec<Rational>> },
    /// No common kernel vector modulo the partial flag of dimension `stage`.
    NotNilpotent { stage: usize, partial_flag: Vec<Vec<Rational>> },
}

impl CharNilpotency {
    pub fn is_nilpotent(&self) -> bool {
        matches!(self, CharNilpotency::Nilpotent { .. })
    }
}

/// Engel-style flag extraction on the derivation space.
pub fn is_characteristically_nilpotent(alg: &LieAlgebra, der: &DerivationSpace) -> CharNilpotency {
    let n = alg.dim();
    let mut flag = Vec::new();
    let mut w = Subspace::zero(n);
    while flag.len() < n {
        let mut rows = Vec::new();
        for d in der.basis() {
            let cols: Vec<Vec<Rational>> =
                (0..n).map(|c| w.reduce(&(0..n).map(|r| d[r][c].clone()).collect::<Vec<_>>())).collect();
            rows.extend(linalg::transpose(&cols, n));
        }
        let k = Subspace::span(n, linalg::nullspace(&rows, n));
        match k.basis().iter().find(|v| !w.contains(v)) {
            Some(v) => {
                w = w.with_vector(v.clone());
                flag.push(v.clone());
            }
            None => return CharNilpotency::NotNilpotent { stage: w.dim(), partial_flag: flag },
        }
    }
    CharNilpotency::Nilpotent { flag }
}

/// `D^n = 0` for a single matrix.
pub fn is_nilpotent_matrix(d: &Matrix) -> bool {
    let n = d.len();
    let mut p = d.clone();
    for _ in 1..n {
        p = linalg::mat_mul(&p, d);
    }
    linalg::is_zero_matrix(&p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use num_traits::Zero;

    #[test]
    fn abelian_derivations_are_everything() {
        let a = LieAlgebra::abelian(3);
        let der = derivation_space(&a);
        assert_eq!(der.len(), 9);
        assert!(matches!(
            is_characteristically_nilpotent(&a, &der),
            CharNilpotency::NotNilpotent { stage: 0, .. }
        ));
    }

    #[test]
    fn h3_derivations() {
        let h = catalog::h3();
        let der = derivation_space(&h);
        // gl(2) acting on span{X2,X3} plus maps into the center: 4 + 2.
        assert_eq!(der.len(), 6);
        assert_eq!(der.leibniz_defect(&h), None);
        assert!(der.is_closed_under_commutator());
        assert!(!is_characteristically_nilpotent(&h, &der).is_nilpotent());
    }

    #[test]
    fn nonhomog_is_characteristically_nilpotent() {
        let g = catalog::nonhomog();
        let der = derivation_space(&g);
        assert_eq!(der.leibniz_defect(&g), None);
        assert!(der.is_closed_under_commutator());
        for d in der.basis() {
            assert!((0..8).all(|k| d[k][k].is_zero()));
            assert!(is_nilpotent_matrix(d));
        }
        match is_characteristically_nilpotent(&g, &der) {
            CharNilpotency::Nilpotent { flag } => assert_eq!(flag.len(), 8),
            other => panic!("{other:?}"),
        }
    }
}

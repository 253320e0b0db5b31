//! Jordan-Hölder flags by ascending central refinement.

use super::LieAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{self, Subspace};
use crate::rational::{is_zero_vec, unit_vec, Rational};

/// Adapted basis `X_1..X_n` and ideals `g_0 = 0 ⊂ g_1 ⊂ ... ⊂ g_n = g`.
#[derive(Debug, Clone)]
pub struct FlagSequence {
    basis: Vec<Vec<Rational>>,
    ideals: Vec<Subspace>,
}

/// First failed flag invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FlagDefect {
    WrongLength,
    NotIncreasing { j: usize },
    NotCentralStep { j: usize },
}

impl FlagSequence {
    /// Builds the flag spanned by successive prefixes of `basis`.
    pub fn from_basis(basis: Vec<Vec<Rational>>) -> Self {
        let n = basis.first().map_or(0, Vec::len);
        let mut ideals = vec![Subspace::zero(n)];
        for v in &basis {
            let next = ideals.last().expect("nonempty").with_vector(v.clone());
            ideals.push(next);
        }
        Self { basis, ideals }
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    /// `g_j` for `j = 0..=n`.
    pub fn ideal(&self, j: usize) -> &Subspace {
        &self.ideals[j]
    }

    pub fn ideals(&self) -> &[Subspace] {
        &self.ideals
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// Change-of-basis matrix whose columns are the flag vectors.
    pub fn matrix(&self) -> Vec<Vec<Rational>> {
        linalg::transpose(&self.basis, self.basis.len())
    }

    /// Exact check of `dim g_j/g_{j-1} = 1` and `[g, g_j] ⊆ g_{j-1}`.
    pub fn verify(&self, alg: &LieAlgebra) -> std::result::Result<(), FlagDefect> {
        let n = alg.dim();
        if self.basis.len() != n || self.ideals.len() != n + 1 {
            return Err(FlagDefect::WrongLength);
        }
        for j in 1..=n {
            if self.ideals[j].dim() != j || !self.ideals[j].contains_subspace(&self.ideals[j - 1]) {
                return Err(FlagDefect::NotIncreasing { j });
            }
            let v = &self.basis[j - 1];
            for i in 0..n {
                let w = alg.bracket_generic(&unit_vec(n, i), v);
                if !self.ideals[j - 1].contains(&w) {
                    return Err(FlagDefect::NotCentralStep { j });
                }
            }
        }
        Ok(())
    }
}

/// `{v : [X_i, v] ∈ s for all i}`.
pub(crate) fn central_preimage(alg: &LieAlgebra, s: &Subspace) -> Subspace {
    let n = alg.dim();
    let mut rows = Vec::new();
    for i in 0..n {
        let ei = unit_vec(n, i);
        let cols: Vec<Vec<Rational>> =
            (0..n).map(|c| s.reduce(&alg.bracket_generic(&ei, &unit_vec(n, c)))).collect();
        rows.extend(linalg::transpose(&cols, n));
    }
    Subspace::span(n, linalg::nullspace(&rows, n))
}

/// Ascending central refinement: at each stage take the first reduced basis
/// vector of the central preimage of the current ideal that is not yet in it.
pub fn jordan_holder_flag(alg: &LieAlgebra, preferred: Option<&[Rational]>) -> Result<FlagSequence> {
    let n = alg.dim();
    let mut basis: Vec<Vec<Rational>> = Vec::with_capacity(n);
    let mut current = Subspace::zero(n);
    if let Some(x1) = preferred {
        alg.check_len(x1)?;
        if is_zero_vec(x1) || !alg.is_central(x1) {
            return Err(Error::PreferredVectorNotCentral);
        }
        basis.push(x1.to_vec());
        current = current.with_vector(x1.to_vec());
    }
    while basis.len() < n {
        let up = central_preimage(alg, &current);
        let v = up
            .basis()
            .iter()
            .find(|v| !current.contains(v))
            .cloned()
            .expect("nilpotent algebras have a nontrivial central step");
        current = current.with_vector(v.clone());
        basis.push(v);
    }
    Ok(FlagSequence::from_basis(basis))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn h3_flag_is_standard() {
        let h = catalog::h3();
        let f = jordan_holder_flag(&h, Some(&unit_vec(3, 0))).unwrap();
        assert_eq!(f.basis(), &[unit_vec(3, 0), unit_vec(3, 1), unit_vec(3, 2)]);
        f.verify(&h).unwrap();
    }

    #[test]
    fn non_central_preference_is_rejected() {
        let h = catalog::h3();
        assert!(matches!(
            jordan_holder_flag(&h, Some(&unit_vec(3, 1))),
            Err(Error::PreferredVectorNotCentral)
        ));
    }

    #[test]
    fn verify_catches_bad_order() {
        let h = catalog::h3();
        let f = FlagSequence::from_basis(vec![unit_vec(3, 1), unit_vec(3, 0), unit_vec(3, 2)]);
        assert_eq!(f.verify(&h), Err(FlagDefect::NotCentralStep { j: 1 }));
    }

    #[test]
    fn catalog_flags_verify() {
        for (_, alg) in catalog::all() {
            jordan_holder_flag(&alg, None).unwrap().verify(&alg).unwrap();
        }
    }
}

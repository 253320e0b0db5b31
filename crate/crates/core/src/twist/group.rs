//! The predual group law `·_e` and cocycle `α`, compiled to polynomials.

use num_complex::Complex64;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lie::Coeff;
use crate::orbit::OrbitData;
use crate::poly::{FloatPoly, Poly};
use crate::rational::{to_f64, Rational};

/// Group law on `g_e ≅ R^d` in exponential coordinates, with its phase cocycle.
/// Polynomials are in `2d` variables: `x_0..x_{d-1}` then `y_0..y_{d-1}`.
#[derive(Debug, Clone)]
pub struct PredualGroup {
    d: usize,
    product: Vec<Poly>,
    alpha: Poly,
    product_f: Vec<FloatPoly>,
    alpha_f: FloatPoly,
    additive: bool,
    bilinear: Option<Vec<Vec<f64>>>,
    weights: Vec<u32>,
}

impl PredualGroup {
    /// Compiles `x ·_e y` and `α(x, y)` symbolically from the BCH series of a flat orbit.
    pub fn from_orbit(orbit: &OrbitData) -> Result<Self> {
        if !orbit.is_flat() {
            return Err(Error::NotFlat);
        }
        let alg = orbit.algebra();
        let n = alg.dim();
        let d = orbit.d();
        let basis = orbit.predual_basis();
        let embed = |offset: usize| -> Vec<Poly> {
            let mut v = vec![Poly::default(); n];
            for (k, b) in basis.iter().enumerate() {
                let var = Poly::var(2 * d, offset + k);
                for (i, c) in b.iter().enumerate() {
                    if !c.is_zero() {
                        v[i].add_assign(&var.scale(c));
                    }
                }
            }
            v
        };
        let z = alg.bch_generic(&embed(0), &embed(d));
        let to_flag = orbit.to_flag_matrix();
        let coord = |row: usize| -> Poly {
            let mut p = Poly::default();
            for (i, c) in to_flag[row].iter().enumerate() {
                if !c.is_zero() {
                    p.add_assign(&z[i].scale(c));
                }
            }
            p
        };
        let alpha = coord(0);
        let product: Vec<Poly> = orbit.jump_set().iter().map(|&j| coord(j - 1)).collect();

        let series = alg.lower_central_series();
        let center = alg.center();
        let weights = basis
            .iter()
            .map(|b| {
                let depth = (0..series.len()).rev().find(|&k| series[k].sum(&center).contains(b)).unwrap_or(0);
                depth as u32 + 1
            })
            .collect();
        Ok(Self::assemble(d, product, alpha, weights))
    }

    /// `R^d` with addition and zero cocycle.
    pub fn abelian(d: usize) -> Self {
        let product = (0..d)
            .map(|k| {
                let mut p = Poly::var(2 * d, k);
                p.add_assign(&Poly::var(2 * d, d + k));
                p
            })
            .collect();
        Self::assemble(d, product, Poly::default(), vec![1; d])
    }

    fn assemble(d: usize, product: Vec<Poly>, alpha: Poly, weights: Vec<u32>) -> Self {
        let additive = product.iter().enumerate().all(|(k, p)| {
            let mut sum = Poly::var(2 * d, k);
            sum.add_assign(&Poly::var(2 * d, d + k));
            *p == sum
        });
        let bilinear = bilinear_part(d, &alpha);
        let product_f = product.iter().map(Poly::to_float).collect();
        let alpha_f = alpha.to_float();
        Self { d, product, alpha, product_f, alpha_f, additive, bilinear, weights }
    }

    /// Same group law with cocycle `-α`, i.e. `γ` replaced by `conj(γ)`.
    pub fn conjugate(&self) -> Self {
        let alpha = self.alpha.scale(&-Rational::from_integer(1.into()));
        Self::assemble(self.d, self.product.clone(), alpha, self.weights.clone())
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Whether `x ·_e y = x + y`.
    pub fn is_additive(&self) -> bool {
        self.additive
    }

    /// `A` with `α(x, y) = Σ A_ij x_i y_j`, when `α` has that form.
    pub fn bilinear_alpha(&self) -> Option<&[Vec<f64>]> {
        self.bilinear.as_deref()
    }

    /// Homogeneous weights of the predual coordinates.
    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn alpha_poly(&self) -> &Poly {
        &self.alpha
    }

    pub fn product_polys(&self) -> &[Poly] {
        &self.product
    }

    fn join<T: Clone>(x: &[T], y: &[T]) -> Vec<T> {
        x.iter().chain(y).cloned().collect()
    }

    pub fn product_exact(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let xy = Self::join(x, y);
        self.product.iter().map(|p| p.eval(&xy)).collect()
    }

    pub fn alpha_exact(&self, x: &[Rational], y: &[Rational]) -> Rational {
        self.alpha.eval(&Self::join(x, y))
    }

    pub fn product(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        if self.additive {
            return x.iter().zip(y).map(|(a, b)| a + b).collect();
        }
        let xy = Self::join(x, y);
        self.product_f.iter().map(|p| p.eval(&xy)).collect()
    }

    pub fn alpha(&self, x: &[f64], y: &[f64]) -> f64 {
        if let Some(a) = &self.bilinear {
            let mut s = 0.0;
            for (i, row) in a.iter().enumerate() {
                for (j, c) in row.iter().enumerate() {
                    s += c * x[i] * y[j];
                }
            }
            return s;
        }
        self.alpha_f.eval(&Self::join(x, y))
    }

    /// `γ(x, y) = e^{iα(x, y)}`.
    pub fn gamma(&self, x: &[f64], y: &[f64]) -> Complex64 {
        Complex64::from_polar(1.0, self.alpha(x, y))
    }
}

fn bilinear_part(d: usize, alpha: &Poly) -> Option<Vec<Vec<f64>>> {
    let mut a = vec![vec![0.0; d]; d];
    for (m, c) in alpha.terms() {
        let nz: Vec<(usize, u8)> = m.iter().enumerate().filter(|(_, &e)| e > 0).map(|(k, &e)| (k, e)).collect();
        match nz.as_slice() {
            [(i, 1), (j, 1)] if *i < d && *j >= d => a[*i][*j - d] = to_f64(c),
            _ => return None,
        }
    }
    Some(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::rational::{rat, unit_vec};

    #[test]
    fn heisenberg_compiles_to_symplectic_form() {
        let o = OrbitData::new(&catalog::h3(), &unit_vec(3, 0)).unwrap();
        let g = PredualGroup::from_orbit(&o).unwrap();
        assert!(g.is_additive());
        let a = g.bilinear_alpha().unwrap();
        assert_eq!(a, &[vec![0.0, -0.5], vec![0.5, 0.0]]);
        assert_eq!(g.weights(), &[1, 1]);
        let x = [rat(1, 3), rat(-2, 5)];
        let y = [rat(7, 2), rat(1, 1)];
        assert_eq!(g.alpha_exact(&x, &y), o.alpha(&x, &y).unwrap());
    }

    #[test]
    fn extension_group_matches_exact_route() {
        let alg = catalog::ext_g0st(rat(1, 1), rat(1, 1)).unwrap();
        let o = OrbitData::new(&alg, &unit_vec(7, 0)).unwrap();
        let g = PredualGroup::from_orbit(&o).unwrap();
        assert!(!g.is_additive());
        assert_eq!(g.weights(), &[2, 2, 2, 1, 1, 1]);
        let x: Vec<Rational> = (0..6).map(|k| rat(k as i64 - 2, 3)).collect();
        let y: Vec<Rational> = (0..6).map(|k| rat(5 - k as i64, 2)).collect();
        assert_eq!(g.product_exact(&x, &y), o.product_e(&x, &y).unwrap());
        assert_eq!(g.alpha_exact(&x, &y), o.alpha(&x, &y).unwrap());
    }

    #[test]
    fn abelian_has_no_twist() {
        let g = PredualGroup::abelian(2);
        assert!(g.is_additive());
        assert_eq!(g.alpha(&[1.0, 2.0], &[3.0, 4.0]), 0.0);
    }
}

//! Sparse multivariate polynomials with exact coefficients, used to compile
//! group laws and cocycles once and evaluate them on grids.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::lie::Coeff;
use crate::rational::{to_f64, Rational};

/// Exponent vector, one entry per variable.
pub type Monomial = Vec<u8>;

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn constant(c: Rational) -> Self {
        let mut p = Poly::default();
        if !c.is_zero() {
            p.terms.insert(Vec::new(), c);
        }
        p
    }

    /// The variable `x_k` among `nvars` variables.
    pub fn var(nvars: usize, k: usize) -> Self {
        let mut m = vec![0u8; nvars];
        m[k] = 1;
        let mut p = Poly::default();
        p.terms.insert(m, Rational::one());
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(|m| m.iter().map(|&e| e as usize).sum()).max().unwrap_or(0)
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (k, &e) in m.iter().enumerate() {
                for _ in 0..e {
                    t *= &x[k];
                }
            }
            acc += t;
        }
        acc
    }

    /// Coefficient of a monomial given as (variable, exponent) pairs.
    pub fn coefficient(&self, nvars: usize, powers: &[(usize, u8)]) -> Rational {
        let mut m = vec![0u8; nvars];
        for &(k, e) in powers {
            m[k] = e;
        }
        let m = normalize(m);
        self.terms.get(&m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn to_float(&self) -> FloatPoly {
        FloatPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let powers = m.iter().enumerate().filter(|(_, &e)| e > 0).map(|(k, &e)| (k, e)).collect();
                    (powers, to_f64(c))
                })
                .collect(),
        }
    }
}

fn normalize(mut m: Monomial) -> Monomial {
    while m.last() == Some(&0) {
        m.pop();
    }
    m
}

fn mul_monomial(a: &Monomial, b: &Monomial) -> Monomial {
    let n = a.len().max(b.len());
    let m = (0..n).map(|k| a.get(k).copied().unwrap_or(0) + b.get(k).copied().unwrap_or(0)).collect();
    normalize(m)
}

impl Coeff for Poly {
    fn vanishing() -> Self {
        Poly::default()
    }

    fn vanishes(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_assign(&mut self, other: &Self) {
        for (m, c) in &other.terms {
            let e = self.terms.entry(m.clone()).or_insert_with(Rational::zero);
            *e += c;
            if e.is_zero() {
                self.terms.remove(m);
            }
        }
    }

    fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(&other.scale(&-Rational::one()));
        out
    }

    fn mul(&self, other: &Self) -> Self {
        let mut out = Poly::default();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = mul_monomial(ma, mb);
                let e = out.terms.entry(m.clone()).or_insert_with(Rational::zero);
                *e += ca * cb;
                if e.is_zero() {
                    out.terms.remove(&m);
                }
            }
        }
        out
    }

    fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Poly::default();
        }
        Poly { terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    fn from_rational(c: &Rational) -> Self {
        Poly::constant(c.clone())
    }
}

/// Floating-point copy of a [`Poly`] for fast evaluation.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FloatPoly {
    terms: Vec<(Vec<(usize, u8)>, f64)>,
}

impl FloatPoly {
    pub fn eval(&self, x: &[f64]) -> f64 {
        let mut acc = 0.0;
        for (powers, c) in &self.terms {
            let mut t = *c;
            for &(k, e) in powers {
                t *= x[k].powi(i32::from(e));
            }
            acc += t;
        }
        acc
    }

    pub fn terms(&self) -> &[(Vec<(usize, u8)>, f64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn arithmetic_and_eval() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let mut p = x.mul(&y);
        p.add_assign(&x.scale(&rat(1, 2)));
        assert_eq!(p.degree(), 2);
        assert_eq!(p.eval(&[int(2), int(3)]), int(7));
        assert_eq!(p.coefficient(2, &[(0, 1), (1, 1)]), int(1));
        assert!((p.to_float().eval(&[2.0, 3.0]) - 7.0).abs() < 1e-15);
        assert!(p.sub(&p).vanishes());
    }
}

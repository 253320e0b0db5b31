//! Exact linear algebra over the rationals.
//!
//! Elimination is fraction-free (Bareiss): every rational row is first scaled
//! to an integer row, then eliminated with exact integer divisions by the
//! previous pivot. The pivot is the first nonzero entry in column order.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::rational::{denominator_lcm, Rational};

/// Integer echelon form produced by Bareiss elimination.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub rows: Vec<Vec<BigInt>>,
    /// Pivot column of each leading row, in order.
    pub pivots: Vec<usize>,
    /// Number of row swaps performed.
    pub swaps: usize,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Fraction-free elimination of an integer matrix with `cols` columns.
pub fn bareiss(mut a: Vec<Vec<BigInt>>, cols: usize) -> Echelon {
    let m = a.len();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut swaps = 0;
    let mut r = 0;
    for c in 0..cols {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            a.swap(p, r);
            swaps += 1;
        }
        let (top, rest) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let piv = pivot_row[c].clone();
        for row in rest.iter_mut() {
            let lead = std::mem::take(&mut row[c]);
            if lead.is_zero() {
                // Row still needs the uniform Bareiss scaling.
                for j in c + 1..cols {
                    if !row[j].is_zero() {
                        row[j] = (&piv * &row[j]) / &prev;
                    }
                }
                continue;
            }
            for j in c + 1..cols {
                let v = &piv * &row[j] - &lead * &pivot_row[j];
                row[j] = v / &prev;
            }
        }
        prev = piv;
        pivots.push(c);
        r += 1;
    }
    Echelon { rows: a, pivots, swaps }
}

fn integer_rows(rows: &[Vec<Rational>]) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
    let mut scales = Vec::with_capacity(rows.len());
    let ints = rows
        .iter()
        .map(|row| {
            let l = denominator_lcm(row);
            let out = row
                .iter()
                .map(|x| (x * Rational::from_integer(l.clone())).to_integer())
                .collect();
            scales.push(l);
            out
        })
        .collect();
    (ints, scales)
}

/// Reduced row echelon form of a rational matrix (zero rows dropped).
pub fn rref(rows: &[Vec<Rational>], cols: usize) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let (ints, _) = integer_rows(rows);
    let ech = bareiss(ints, cols);
    let rank = ech.rank();
    let mut out: Vec<Vec<Rational>> = ech.rows[..rank]
        .iter()
        .zip(&ech.pivots)
        .map(|(row, &p)| {
            let piv = Rational::from_integer(row[p].clone());
            row.iter()
                .map(|x| Rational::from_integer(x.clone()) / &piv)
                .collect()
        })
        .collect();
    // Back substitution, bottom up.
    for i in (0..rank).rev() {
        let p = ech.pivots[i];
        let (upper, lower) = out.split_at_mut(i);
        let pivot_row = &lower[0];
        for row in upper.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for j in p..cols {
                if !pivot_row[j].is_zero() {
                    row[j] -= &f * &pivot_row[j];
                }
            }
        }
    }
    (out, ech.pivots)
}

pub fn rank(rows: &[Vec<Rational>], cols: usize) -> usize {
    let (ints, _) = integer_rows(rows);
    bareiss(ints, cols).rank()
}

/// Basis of `{v : A v = 0}` where `A` has the given rows.
pub fn nullspace(rows: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    let (r, pivots) = rref(rows, cols);
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (row, &p) in r.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Exact determinant of a square rational matrix.
pub fn determinant(rows: &[Vec<Rational>]) -> Rational {
    let n = rows.len();
    if n == 0 {
        return Rational::one();
    }
    let (ints, scales) = integer_rows(rows);
    let ech = bareiss(ints, n);
    if ech.rank() < n {
        return Rational::zero();
    }
    let mut det = Rational::from_integer(ech.rows[n - 1][n - 1].clone());
    if ech.swaps % 2 == 1 {
        det = -det;
    }
    let scale: BigInt = scales.iter().product();
    det / Rational::from_integer(scale)
}

/// Solve `A x = b` for square invertible `A`, returning `None` when singular.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    let aug: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (r, pivots) = rref(&aug, n + 1);
    if pivots.len() < n || pivots.iter().any(|&p| p >= n) {
        return None;
    }
    Some(r.iter().map(|row| row[n].clone()).collect())
}

pub fn transpose(rows: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    (0..cols)
        .map(|j| rows.iter().map(|r| r[j].clone()).collect())
        .collect()
}

pub fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .filter(|(x, _)| !x.is_zero())
                        .fold(Rational::zero(), |acc, (x, brow)| acc + x * &brow[j])
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &[Vec<Rational>], v: &[Rational]) -> Vec<Rational> {
    a.iter().map(|row| crate::rational::dot(row, v)).collect()
}

pub fn is_zero_matrix(a: &[Vec<Rational>]) -> bool {
    a.iter().all(|r| r.iter().all(Zero::is_zero))
}

/// A linear subspace of `Q^n`, stored by its reduced echelon basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Self { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Self::span(ambient, (0..ambient).map(|i| crate::rational::unit_vec(ambient, i)))
    }

    pub fn span<I: IntoIterator<Item = Vec<Rational>>>(ambient: usize, vectors: I) -> Self {
        let rows: Vec<Vec<Rational>> = vectors.into_iter().collect();
        if rows.is_empty() {
            return Self::zero(ambient);
        }
        let (basis, pivots) = rref(&rows, ambient);
        Self { ambient, basis, pivots }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Reduced echelon basis; each vector has a unit pivot coordinate.
    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Remainder of `v` after reduction against the echelon basis.
    pub fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        let mut r = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if r[p].is_zero() {
                continue;
            }
            let f = r[p].clone();
            for (x, y) in r.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        r
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Self::span(self.ambient, self.basis.iter().chain(&other.basis).cloned())
    }

    pub fn with_vector(&self, v: Vec<Rational>) -> Subspace {
        Self::span(self.ambient, self.basis.iter().cloned().chain(std::iter::once(v)))
    }

    pub fn max_abs_coefficient(&self) -> Rational {
        self.basis
            .iter()
            .flat_map(|r| r.iter().map(|x| x.abs()))
            .fold(Rational::zero(), |a, b| if b > a { b } else { a })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn determinant_small() {
        assert_eq!(determinant(&m(&[&[2, 0], &[0, 3]])), int(6));
        assert_eq!(determinant(&m(&[&[0, 1], &[1, 0]])), int(-1));
        assert_eq!(determinant(&m(&[&[1, 2], &[2, 4]])), int(0));
        let a = vec![vec![rat(1, 2), rat(1, 3)], vec![rat(1, 4), rat(1, 5)]];
        // 1/10 - 1/12 = 1/60
        assert_eq!(determinant(&a), rat(1, 60));
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        fn cofactor(a: &[Vec<Rational>]) -> Rational {
            let n = a.len();
            if n == 1 {
                return a[0][0].clone();
            }
            let mut acc = Rational::zero();
            for j in 0..n {
                let minor: Vec<Vec<Rational>> = a[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| x.clone()).collect())
                    .collect();
                let term = &a[0][j] * cofactor(&minor);
                if j % 2 == 0 { acc += term } else { acc -= term }
            }
            acc
        }
        let a = m(&[&[0, 3, -1, 4], &[2, 0, 5, 1], &[1, -2, 0, 3], &[7, 1, 1, 0]]);
        assert_eq!(determinant(&a), cofactor(&a));
    }

    #[test]
    fn nullspace_and_rank() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6]]);
        assert_eq!(rank(&a, 3), 1);
        let ns = nullspace(&a, 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(mat_vec(&a, v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn nullspace_with_empty_column() {
        let a = m(&[&[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(nullspace(&a, 3), vec![vec![int(1), int(0), int(0)]]);
    }

    #[test]
    fn subspace_membership() {
        let s = Subspace::span(3, vec![vec![int(1), int(1), int(0)], vec![int(0), int(1), int(1)]]);
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&[int(1), int(2), int(1)]));
        assert!(!s.contains(&[int(0), int(0), int(1)]));
        assert_eq!(s.sum(&Subspace::full(3)).dim(), 3);
    }

    #[test]
    fn solve_system() {
        let a = m(&[&[2, 1], &[1, 3]]);
        let x = solve(&a, &[int(3), int(5)]).unwrap();
        assert_eq!(x, vec![rat(4, 5), rat(7, 5)]);
        assert!(solve(&m(&[&[1, 1], &[1, 1]]), &[int(1), int(2)]).is_none());
    }
}

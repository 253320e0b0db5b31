//! Symplectic 2-cocycles, one-dimensional central extensions and graph algebras.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lie::{LieAlgebra, StructureTable};
use crate::linalg;
use crate::rational::{dot, unit_vec, Rational};

/// Skew-symmetric bilinear form given by its Gram matrix `J[i][j] = ω(X_i, X_j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticForm {
    matrix: Vec<Vec<Rational>>,
}

impl SymplecticForm {
    pub fn new(matrix: Vec<Vec<Rational>>) -> Result<Self> {
        let n = matrix.len();
        for row in &matrix {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: row.len() });
            }
        }
        for i in 0..n {
            for j in 0..n {
                if matrix[i][j] != -matrix[j][i].clone() {
                    return Err(Error::NotSkew);
                }
            }
        }
        Ok(Self { matrix })
    }

    /// Form from its upper-triangular entries `(i, j, ω(X_i, X_j))`, 0-based, `i < j`.
    pub fn from_upper(n: usize, entries: &[(usize, usize, Rational)]) -> Result<Self> {
        let mut m = vec![vec![Rational::zero(); n]; n];
        for (i, j, c) in entries {
            if *i >= n || *j >= n {
                return Err(Error::IndexOutOfRange { index: (*i).max(*j) + 1, dim: n });
            }
            if i >= j {
                return Err(Error::PairOrder { i: i + 1, j: j + 1 });
            }
            if !m[*i][*j].is_zero() {
                return Err(Error::DuplicatePair { i: i + 1, j: j + 1 });
            }
            m[*i][*j] = c.clone();
            m[*j][*i] = -c.clone();
        }
        Ok(Self { matrix: m })
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &[Vec<Rational>] {
        &self.matrix
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        &self.matrix[i][j]
    }

    pub fn eval(&self, x: &[Rational], y: &[Rational]) -> Rational {
        dot(x, &linalg::mat_vec(&self.matrix, y))
    }

    pub fn determinant(&self) -> Rational {
        linalg::determinant(&self.matrix)
    }

    pub fn is_nondegenerate(&self) -> bool {
        !self.determinant().is_zero()
    }
}

/// First basis triple `i < j < k` (0-based) on which the cocycle condition fails.
pub fn first_cocycle_violation(alg: &LieAlgebra, omega: &SymplecticForm) -> Result<Option<(usize, usize, usize)>> {
    let n = alg.dim();
    if omega.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, got: omega.dim() });
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let s = omega.eval(&unit_vec(n, i), &alg.basis_bracket(j, k))
                    + omega.eval(&unit_vec(n, j), &alg.basis_bracket(k, i))
                    + omega.eval(&unit_vec(n, k), &alg.basis_bracket(i, j));
                if !s.is_zero() {
                    return Ok(Some((i, j, k)));
                }
            }
        }
    }
    Ok(None)
}

pub fn is_two_cocycle(alg: &LieAlgebra, omega: &SymplecticForm) -> Result<bool> {
    Ok(first_cocycle_violation(alg, omega)?.is_none())
}

/// `R ⊕_ω g0` with the new central generator as `X_1` and `X_i` of `g0` shifted to `X_{i+1}`.
pub fn central_extension(alg: &LieAlgebra, omega: &SymplecticForm) -> Result<LieAlgebra> {
    if let Some((i, j, k)) = first_cocycle_violation(alg, omega)? {
        return Err(Error::NotACocycle { i: i + 1, j: j + 1, k: k + 1 });
    }
    let n = alg.dim();
    let mut t = StructureTable::new(n + 1);
    for i in 0..n {
        for j in i + 1..n {
            let mut terms = Vec::new();
            let w = omega.entry(i, j);
            if !w.is_zero() {
                terms.push((0, w.clone()));
            }
            for (k, c) in alg.basis_bracket(i, j).into_iter().enumerate() {
                if !c.is_zero() {
                    terms.push((k + 1, c));
                }
            }
            if !terms.is_empty() {
                t.set(i + 1, j + 1, terms);
            }
        }
    }
    LieAlgebra::validate(t)
}

/// A simple finite graph with string-labelled vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertices: Vec<String>,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Sorts vertices and edges; rejects loops, repeats and unknown endpoints.
    pub fn new(vertices: Vec<String>, edges: Vec<(String, String)>) -> Result<Self> {
        let set: BTreeSet<String> = vertices.iter().cloned().collect();
        if set.len() != vertices.len() {
            return Err(Error::InvalidGraph("duplicate vertex".into()));
        }
        let vertices: Vec<String> = set.into_iter().collect();
        let index: BTreeMap<&str, usize> = vertices.iter().enumerate().map(|(k, v)| (v.as_str(), k)).collect();
        let mut seen = BTreeSet::new();
        for (u, v) in &edges {
            let (a, b) = match (index.get(u.as_str()), index.get(v.as_str())) {
                (Some(&a), Some(&b)) => (a, b),
                _ => return Err(Error::InvalidGraph(format!("edge {u}-{v} uses an unknown vertex"))),
            };
            if a == b {
                return Err(Error::InvalidGraph(format!("loop at {u}")));
            }
            if !seen.insert((a.min(b), a.max(b))) {
                return Err(Error::InvalidGraph(format!("repeated edge {u}-{v}")));
            }
        }
        Ok(Self { vertices, edges: seen.into_iter().collect() })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    /// Edges as sorted index pairs into [`Graph::vertices`].
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Vertex and edge counts per connected component.
    pub fn components(&self) -> Vec<(usize, usize)> {
        let n = self.vertices.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for &(a, b) in &self.edges {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra] = rb;
            }
        }
        let mut counts: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
        for v in 0..n {
            counts.entry(find(&mut parent, v)).or_default().0 += 1;
        }
        for &(a, _) in &self.edges {
            counts.entry(find(&mut parent, a)).or_default().1 += 1;
        }
        counts.into_values().collect()
    }

    pub fn triangle() -> Self {
        let v = |s: &str| s.to_string();
        Self::new(vec![v("a"), v("b"), v("c")], vec![(v("a"), v("b")), (v("b"), v("c")), (v("a"), v("c"))])
            .expect("triangle is simple")
    }
}

/// `V_0 ⊕ V_1` with `[v, w] = v ∧ w` on edges; vertices first, then edges.
pub fn graph_lie_algebra(g: &Graph) -> LieAlgebra {
    let nv = g.vertices().len();
    let mut t = StructureTable::new(nv + g.edges().len());
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        t.set(a, b, vec![(nv + e, Rational::from_integer(1.into()))]);
    }
    let mut labels: Vec<String> = g.vertices().to_vec();
    labels.extend(g.edges().iter().map(|&(a, b)| format!("{}^{}", g.vertices()[a], g.vertices()[b])));
    LieAlgebra::validate(t.with_labels(labels)).expect("graph algebras are 2-step")
}

/// Even total dimension and no component with more edges than vertices.
pub fn symplectic_exists_graph(g: &Graph) -> bool {
    (g.vertices().len() + g.edges().len()).is_multiple_of(2) && g.components().iter().all(|&(v, e)| e <= v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::rational::{int, rat};

    #[test]
    fn heisenberg_from_plane() {
        let plane = LieAlgebra::abelian(2);
        let w = SymplecticForm::from_upper(2, &[(0, 1, int(1))]).unwrap();
        let h = central_extension(&plane, &w).unwrap();
        assert_eq!(h.dim(), 3);
        assert_eq!(h.nilpotency_step(), 2);
        assert_eq!(h.basis_bracket(1, 2), unit_vec(3, 0));
    }

    #[test]
    fn g0st_form_is_cocycle_and_elementary_form_is_not() {
        let (g, w) = catalog::g0st(int(1), int(1)).unwrap();
        assert!(is_two_cocycle(&g, &w).unwrap());
        assert_eq!(w.determinant() * w.determinant(), int(1));
        let bad = SymplecticForm::from_upper(6, &[(0, 1, int(1))]).unwrap();
        // Brute-force oracle: scan every triple independently of the early exit.
        let mut violations = Vec::new();
        for i in 0..6 {
            for j in i + 1..6 {
                for k in j + 1..6 {
                    let s = bad.eval(&unit_vec(6, i), &g.basis_bracket(j, k))
                        + bad.eval(&unit_vec(6, j), &g.basis_bracket(k, i))
                        + bad.eval(&unit_vec(6, k), &g.basis_bracket(i, j));
                    if !s.is_zero() {
                        violations.push((i, j, k));
                    }
                }
            }
        }
        assert_eq!(violations, vec![(0, 3, 5), (1, 3, 4)]);
        assert_eq!(first_cocycle_violation(&g, &bad).unwrap(), Some((0, 3, 5)));
        assert!(matches!(central_extension(&g, &bad), Err(Error::NotACocycle { i: 1, j: 4, k: 6 })));
    }

    #[test]
    fn nonhomog_forms() {
        let g = catalog::nonhomog();
        assert!(is_two_cocycle(&g, &catalog::nonhomog_form(int(1), int(1))).unwrap());
        assert!(!catalog::nonhomog_form(int(1), int(0)).is_nondegenerate());
        assert!(catalog::nonhomog_form(int(2), int(3)).is_nondegenerate());
        assert!(!SymplecticForm::new(vec![vec![int(1)]]).is_ok());
        let w = catalog::nonhomog_form(rat(1, 2), int(3));
        assert_eq!(w.eval(&unit_vec(8, 0), &unit_vec(8, 7)), rat(1, 2));
    }

    #[test]
    fn graphs() {
        let tri = Graph::triangle();
        let g = graph_lie_algebra(&tri);
        assert_eq!(g.dim(), 6);
        assert!(symplectic_exists_graph(&tri));
        let s = |x: &str| x.to_string();
        let edge = Graph::new(vec![s("u"), s("v")], vec![(s("u"), s("v"))]).unwrap();
        assert!(!symplectic_exists_graph(&edge));
        let two = Graph::new(
            ["a", "b", "c", "d", "e", "f"].map(s).to_vec(),
            vec![(s("a"), s("b")), (s("b"), s("c")), (s("a"), s("c")), (s("d"), s("e")), (s("e"), s("f")), (s("d"), s("f"))],
        )
        .unwrap();
        assert_eq!(graph_lie_algebra(&two).dim(), 12);
        assert_eq!(two.components(), vec![(3, 3), (3, 3)]);
        assert!(symplectic_exists_graph(&two));
        // K4 has 6 edges on 4 vertices.
        let k4 = Graph::new(
            ["a", "b", "c", "d"].map(s).to_vec(),
            vec![(s("a"), s("b")), (s("a"), s("c")), (s("a"), s("d")), (s("b"), s("c")), (s("b"), s("d")), (s("c"), s("d"))],
        )
        .unwrap();
        assert!(!symplectic_exists_graph(&k4));
        assert!(Graph::new(vec![s("a")], vec![(s("a"), s("a"))]).is_err());
    }
}

//! Built-in algebras.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lie::{LieAlgebra, StructureTable};
use crate::rational::{int, Rational};
use crate::symplectic::{central_extension, graph_lie_algebra, Graph, SymplecticForm};

pub fn abelian(n: usize) -> LieAlgebra {
    LieAlgebra::abelian(n)
}

/// Heisenberg algebra with `[X_3, X_2] = X_1`.
pub fn h3() -> LieAlgebra {
    let mut t = StructureTable::new(3);
    t.set(2, 1, vec![(0, int(1))]);
    LieAlgebra::validate(t).expect("h3 is valid")
}

/// The six-dimensional two-step family with
/// `[X_6,X_5] = s X_3`, `[X_6,X_4] = (s+t) X_2`, `[X_5,X_4] = t X_1`,
/// and its anti-diagonal form `ω(X_1,X_6) = ω(X_2,X_5) = ω(X_3,X_4) = 1`.
pub fn g0st(s: Rational, t: Rational) -> Result<(LieAlgebra, SymplecticForm)> {
    if s.is_zero() || t.is_zero() {
        return Err(Error::ZeroParameter);
    }
    let mut table = StructureTable::new(6);
    table
        .set(5, 4, vec![(2, s.clone())])
        .set(5, 3, vec![(1, &s + &t)])
        .set(4, 3, vec![(0, t)]);
    let alg = LieAlgebra::validate(table)?;
    let one = int(1);
    let form = SymplecticForm::from_upper(6, &[(0, 5, one.clone()), (1, 4, one.clone()), (2, 3, one)])?;
    Ok((alg, form))
}

/// Eight-dimensional characteristically nilpotent algebra:
/// `[X_1,X_k] = X_{k+1}` for `k = 2..7`, `[X_2,X_3] = X_6 + X_7`,
/// `[X_2,X_4] = X_7 + X_8`, `[X_2,X_5] = X_8`.
pub fn nonhomog() -> LieAlgebra {
    let mut t = StructureTable::new(8);
    for k in 1..7 {
        t.set(0, k, vec![(k + 1, int(1))]);
    }
    t.set(1, 2, vec![(5, int(1)), (6, int(1))])
        .set(1, 3, vec![(6, int(1)), (7, int(1))])
        .set(1, 4, vec![(7, int(1))]);
    LieAlgebra::validate(t).expect("nonhomog is valid")
}

/// `ω(X_1,X_8) = ω(X_2,X_5) = ω(X_2,X_6) = a`, `ω(X_2,X_7) = -ω(X_3,X_6) = ω(X_4,X_5) = b`.
pub fn nonhomog_form(a: Rational, b: Rational) -> SymplecticForm {
    let entries = [
        (0, 7, a.clone()),
        (1, 4, a.clone()),
        (1, 5, a),
        (1, 6, b.clone()),
        (2, 5, -b.clone()),
        (3, 4, b),
    ];
    SymplecticForm::from_upper(8, &entries).expect("fixed pattern")
}

pub fn triangle() -> LieAlgebra {
    graph_lie_algebra(&Graph::triangle())
}

/// A symplectic form on the triangle-graph algebra (vertices a,b,c then edges ab, ac, bc)
/// pairing each vertex with the opposite edge. The only cocycle constraint is
/// `ω(a,bc) - ω(b,ac) + ω(c,ab) = 0`.
pub fn triangle_form() -> SymplecticForm {
    SymplecticForm::from_upper(6, &[(0, 5, int(1)), (1, 4, int(2)), (2, 3, int(1))]).expect("fixed pattern")
}

pub fn ext_g0st(s: Rational, t: Rational) -> Result<LieAlgebra> {
    let (g, w) = g0st(s, t)?;
    central_extension(&g, &w)
}

pub fn ext_nonhomog(a: Rational, b: Rational) -> Result<LieAlgebra> {
    central_extension(&nonhomog(), &nonhomog_form(a, b))
}

pub fn ext_triangle() -> LieAlgebra {
    central_extension(&triangle(), &triangle_form()).expect("triangle form is a cocycle")
}

/// Algebras whose coadjoint orbit through `X_1^*` is flat.
pub fn flat() -> Vec<(String, LieAlgebra)> {
    vec![
        ("h3".into(), h3()),
        ("ext-g0st(1,1)".into(), ext_g0st(int(1), int(1)).expect("valid")),
        ("ext-nonhomog(1,1)".into(), ext_nonhomog(int(1), int(1)).expect("valid")),
        ("ext-triangle".into(), ext_triangle()),
    ]
}

/// Every named built-in.
pub fn all() -> Vec<(String, LieAlgebra)> {
    let mut out = vec![
        ("abelian(4)".into(), abelian(4)),
        ("g0st(1,1)".into(), g0st(int(1), int(1)).expect("valid").0),
        ("nonhomog".into(), nonhomog()),
        ("triangle".into(), triangle()),
    ];
    out.extend(flat());
    out
}

/// Looks up a built-in by name.
pub fn by_name(name: &str) -> Option<LieAlgebra> {
    match name {
        "h3" => Some(h3()),
        "nonhomog" => Some(nonhomog()),
        "triangle" => Some(triangle()),
        "g0st" => Some(g0st(int(1), int(1)).ok()?.0),
        _ => {
            if let Some(n) = name.strip_prefix("abelian").and_then(|r| r.trim_matches(|c| c == '(' || c == ')').parse().ok()) {
                return Some(abelian(n));
            }
            all().into_iter().find(|(k, _)| k == name).map(|(_, a)| a)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symplectic::is_two_cocycle;

    #[test]
    fn catalog_loads() {
        for (name, alg) in all() {
            assert!(alg.dim() > 0, "{name}");
        }
        assert_eq!(by_name("abelian(5)").unwrap().dim(), 5);
        assert_eq!(by_name("ext-g0st(1,1)").unwrap().dim(), 7);
        assert!(by_name("nope").is_none());
    }

    #[test]
    fn triangle_form_is_symplectic() {
        let w = triangle_form();
        assert!(is_two_cocycle(&triangle(), &w).unwrap());
        assert!(w.is_nondegenerate());
    }

    #[test]
    fn g0st_rejects_zero() {
        assert!(matches!(g0st(int(0), int(1)), Err(Error::ZeroParameter)));
    }

    #[test]
    fn extension_shapes() {
        let e = ext_g0st(int(2), int(3)).unwrap();
        assert_eq!(e.dim(), 7);
        assert_eq!(e.nilpotency_step(), 3);
        assert_eq!(e.center().dim(), 1);
        let n = ext_nonhomog(int(1), int(1)).unwrap();
        assert_eq!(n.nilpotency_step(), 8);
        assert_eq!(n.center().dim(), 1);
    }
}

//! JSON file formats. Indices in algebra and form files are 1-based; rationals
//! are strings `"p/q"` or `"p"`.

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie::{LieAlgebra, StructureTable};
use crate::rational::{format_rational, parse_rational};
use crate::symplectic::{Graph, SymplecticForm};
use crate::twist::{Grid, SampledSymbol};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub k: usize,
    pub c: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BracketJson {
    pub i: usize,
    pub j: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub dim: usize,
    pub brackets: Vec<BracketJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub labels: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: Vec<serde_json::Value>,
    pub edges: Vec<(serde_json::Value, serde_json::Value)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FormEntryJson {
    pub i: usize,
    pub j: usize,
    pub c: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FormJson {
    pub dim: usize,
    pub entries: Vec<FormEntryJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymbolJson {
    pub d: usize,
    #[serde(rename = "L")]
    pub half_width: f64,
    #[serde(rename = "N")]
    pub n: usize,
    pub values: Vec<[f64; 2]>,
}

fn one_based(idx: usize, dim: usize) -> Result<usize> {
    if idx == 0 || idx > dim {
        return Err(Error::IndexOutOfRange { index: idx, dim });
    }
    Ok(idx - 1)
}

pub fn algebra_from_json(a: &AlgebraJson) -> Result<LieAlgebra> {
    let mut t = StructureTable::new(a.dim);
    for b in &a.brackets {
        let (i, j) = (one_based(b.i, a.dim)?, one_based(b.j, a.dim)?);
        if i >= j {
            return Err(Error::PairOrder { i: b.i, j: b.j });
        }
        let terms = b
            .terms
            .iter()
            .map(|t| Ok((one_based(t.k, a.dim)?, parse_rational(&t.c)?)))
            .collect::<Result<Vec<_>>>()?;
        t.set(i, j, terms);
    }
    LieAlgebra::validate(t.with_labels(a.labels.clone()))
}

pub fn algebra_to_json(alg: &LieAlgebra) -> AlgebraJson {
    let t = alg.table();
    AlgebraJson {
        dim: t.dim,
        brackets: t
            .brackets
            .iter()
            .map(|b| BracketJson {
                i: b.i + 1,
                j: b.j + 1,
                terms: b.terms.iter().map(|(k, c)| TermJson { k: k + 1, c: format_rational(c) }).collect(),
            })
            .collect(),
        labels: t.labels,
    }
}

fn vertex_name(v: &serde_json::Value) -> String {
    match v {
        serde_json::Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn graph_from_json(g: &GraphJson) -> Result<Graph> {
    Graph::new(
        g.vertices.iter().map(vertex_name).collect(),
        g.edges.iter().map(|(u, v)| (vertex_name(u), vertex_name(v))).collect(),
    )
}

pub fn form_from_json(f: &FormJson) -> Result<SymplecticForm> {
    let entries = f
        .entries
        .iter()
        .map(|e| Ok((one_based(e.i, f.dim)?, one_based(e.j, f.dim)?, parse_rational(&e.c)?)))
        .collect::<Result<Vec<_>>>()?;
    SymplecticForm::from_upper(f.dim, &entries)
}

pub fn form_to_json(form: &SymplecticForm) -> FormJson {
    let n = form.dim();
    let mut entries = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let c = &form.matrix()[i][j];
            if *c != crate::rational::int(0) {
                entries.push(FormEntryJson { i: i + 1, j: j + 1, c: format_rational(c) });
            }
        }
    }
    FormJson { dim: n, entries }
}

pub fn symbol_from_json(s: &SymbolJson) -> Result<SampledSymbol> {
    let grid = Grid::new(s.d, s.half_width, s.n)?;
    if s.values.len() != grid.len() {
        return Err(Error::DimensionMismatch { expected: grid.len(), got: s.values.len() });
    }
    SampledSymbol::from_values(grid, s.values.iter().map(|v| Complex64::new(v[0], v[1])).collect())
}

pub fn symbol_to_json(s: &SampledSymbol) -> SymbolJson {
    let g = s.grid();
    SymbolJson {
        d: g.d(),
        half_width: g.half_width(),
        n: g.points_per_axis(),
        values: s.values().iter().map(|v| [v.re, v.im]).collect(),
    }
}

/// Reads and parses any of the JSON formats above.
pub fn read_json<T: for<'de> Deserialize<'de>>(path: impl AsRef<Path>) -> Result<T> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

pub fn write_json<T: Serialize>(path: impl AsRef<Path>, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

pub fn read_algebra(path: impl AsRef<Path>) -> Result<LieAlgebra> {
    algebra_from_json(&read_json(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn heisenberg_file_parses() {
        let text = r#"{"dim":3,"brackets":[{"i":2,"j":3,"terms":[{"k":1,"c":"-1"}]}],"labels":["Z","P","Q"]}"#;
        let a: AlgebraJson = serde_json::from_str(text).unwrap();
        let alg = algebra_from_json(&a).unwrap();
        assert_eq!(alg.nilpotency_step(), 2);
        assert_eq!(algebra_to_json(&alg), a);
    }

    #[test]
    fn catalog_algebras_survive_the_format() {
        for (name, alg) in catalog::all() {
            let back = algebra_from_json(&algebra_to_json(&alg)).unwrap();
            assert_eq!(back.table(), alg.table(), "{name}");
        }
    }

    #[test]
    fn bad_indices_are_rejected() {
        let a: AlgebraJson =
            serde_json::from_str(r#"{"dim":2,"brackets":[{"i":1,"j":3,"terms":[]}]}"#).unwrap();
        assert!(matches!(algebra_from_json(&a), Err(Error::IndexOutOfRange { index: 3, dim: 2 })));
        let f: FormJson = serde_json::from_str(r#"{"dim":2,"entries":[{"i":2,"j":1,"c":"1"}]}"#).unwrap();
        assert!(matches!(form_from_json(&f), Err(Error::PairOrder { i: 2, j: 1 })));
    }

    #[test]
    fn graph_accepts_numeric_vertices() {
        let g: GraphJson = serde_json::from_str(r#"{"vertices":[1,2,3],"edges":[[1,2],[2,3],[1,3]]}"#).unwrap();
        let g = graph_from_json(&g).unwrap();
        assert_eq!(g.edges(), Graph::triangle().edges());
    }
}

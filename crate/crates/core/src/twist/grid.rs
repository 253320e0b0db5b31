//! Uniform grids on boxes and complex functions sampled on them.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Nodes `-L + h k`, `k = 0..N`, `h = 2L/N` along each of `d` axes, with a
/// measure density so that every node carries mass `measure * h^d`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    d: usize,
    half_width: f64,
    n: usize,
    measure: f64,
}

impl Grid {
    pub fn new(d: usize, half_width: f64, n: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidGrid("dimension must be positive".into()));
        }
        if !(half_width.is_finite() && half_width > 0.0) {
            return Err(Error::InvalidGrid(format!("half width {half_width} must be positive")));
        }
        if n < 8 || !n.is_power_of_two() {
            return Err(Error::InvalidGrid(format!("points per axis {n} must be a power of two >= 8")));
        }
        Ok(Self { d, half_width, n, measure: 1.0 })
    }

    pub fn with_measure(mut self, measure: f64) -> Self {
        self.measure = measure;
        self
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn points_per_axis(&self) -> usize {
        self.n
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / self.n as f64
    }

    pub fn measure(&self) -> f64 {
        self.measure
    }

    /// Mass of a single node.
    pub fn cell_volume(&self) -> f64 {
        self.measure * self.spacing().powi(self.d as i32)
    }

    pub fn len(&self) -> usize {
        self.n.pow(self.d as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Axis index of the origin.
    pub fn zero_index(&self) -> usize {
        self.n / 2
    }

    pub fn node(&self, k: usize) -> f64 {
        -self.half_width + self.spacing() * k as f64
    }

    /// Per-axis indices of a flat index, last axis fastest.
    pub fn unravel(&self, mut idx: usize) -> Vec<usize> {
        let mut out = vec![0; self.d];
        for a in (0..self.d).rev() {
            out[a] = idx % self.n;
            idx /= self.n;
        }
        out
    }

    pub fn ravel(&self, ks: &[usize]) -> usize {
        ks.iter().fold(0, |acc, &k| acc * self.n + k)
    }

    pub fn point(&self, idx: usize) -> Vec<f64> {
        self.unravel(idx).into_iter().map(|k| self.node(k)).collect()
    }

    /// Flat index of the origin.
    pub fn origin(&self) -> usize {
        self.ravel(&vec![self.zero_index(); self.d])
    }

    /// Same nodes and measure.
    pub fn compatible(&self, other: &Grid) -> bool {
        self == other
    }

    pub fn check(&self, other: &Grid) -> Result<()> {
        if self.compatible(other) {
            Ok(())
        } else {
            Err(Error::GridMismatch)
        }
    }
}

pub type Evaluator = Arc<dyn Fn(&[f64]) -> Complex64 + Send + Sync>;

/// Complex values on a grid plus an optional exact evaluator for off-node points.
#[derive(Clone)]
pub struct SampledSymbol {
    grid: Grid,
    values: Vec<Complex64>,
    analytic: Option<Evaluator>,
}

impl fmt::Debug for SampledSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SampledSymbol")
            .field("grid", &self.grid)
            .field("len", &self.values.len())
            .field("analytic", &self.analytic.is_some())
            .finish()
    }
}

impl SampledSymbol {
    pub fn from_values(grid: Grid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::DimensionMismatch { expected: grid.len(), got: values.len() });
        }
        if values.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::InvalidGrid("non-finite sample".into()));
        }
        Ok(Self { grid, values, analytic: None })
    }

    /// Samples `f` on the grid and keeps it as the off-node evaluator.
    pub fn from_fn<F>(grid: Grid, f: F) -> Self
    where
        F: Fn(&[f64]) -> Complex64 + Send + Sync + 'static,
    {
        let f: Evaluator = Arc::new(f);
        let values = crate::par::map_range(grid.len(), |i| f(&grid.point(i)));
        Self { grid, values, analytic: Some(f) }
    }

    pub fn zeros(grid: Grid) -> Self {
        Self { grid, values: vec![Complex64::new(0.0, 0.0); grid.len()], analytic: None }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn analytic(&self) -> Option<&Evaluator> {
        self.analytic.as_ref()
    }

    pub fn has_analytic(&self) -> bool {
        self.analytic.is_some()
    }

    /// Drops the evaluator so off-node access interpolates.
    pub fn without_analytic(mut self) -> Self {
        self.analytic = None;
        self
    }

    pub fn at(&self, idx: usize) -> Complex64 {
        self.values[idx]
    }

    /// Analytic value if available, else multilinear interpolation with zero outside the box.
    pub fn eval(&self, x: &[f64]) -> Complex64 {
        match &self.analytic {
            Some(f) => f(x),
            None => self.interpolate(x),
        }
    }

    pub fn interpolate(&self, x: &[f64]) -> Complex64 {
        let g = &self.grid;
        let h = g.spacing();
        let n = g.points_per_axis();
        let mut base = Vec::with_capacity(g.d());
        let mut frac = Vec::with_capacity(g.d());
        for &xa in x {
            let t = (xa + g.half_width()) / h;
            if !(t >= 0.0 && t <= (n - 1) as f64) {
                return Complex64::new(0.0, 0.0);
            }
            let k = (t.floor() as usize).min(n - 1);
            base.push(k);
            frac.push(t - k as f64);
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for corner in 0..(1usize << g.d()) {
            let mut w = 1.0;
            let mut idx = 0;
            let mut skip = false;
            for a in 0..g.d() {
                let up = corner >> a & 1 == 1;
                let k = base[a] + usize::from(up);
                let wa = if up { frac[a] } else { 1.0 - frac[a] };
                if wa == 0.0 {
                    skip = true;
                    break;
                }
                if k >= n {
                    skip = true;
                    break;
                }
                w *= wa;
                idx = idx * n + k;
            }
            if !skip {
                acc += self.values[idx] * w;
            }
        }
        acc
    }

    /// Largest gap between node values and the analytic evaluator.
    pub fn analytic_consistency(&self) -> Option<f64> {
        let f = self.analytic.as_ref()?;
        Some(
            self.values
                .iter()
                .enumerate()
                .map(|(i, v)| (f(&self.grid.point(i)) - v).norm())
                .fold(0.0, f64::max),
        )
    }

    pub fn lp_norm(&self, p: f64) -> f64 {
        let s: f64 = self.values.iter().map(|v| v.norm().powf(p)).sum();
        (s * self.grid.cell_volume()).powf(1.0 / p)
    }

    pub fn l1_norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).sum::<f64>() * self.grid.cell_volume()
    }

    pub fn l2_norm(&self) -> f64 {
        (self.values.iter().map(|v| v.norm_sqr()).sum::<f64>() * self.grid.cell_volume()).sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// `∫ self · conj(other)`.
    pub fn inner(&self, other: &SampledSymbol) -> Result<Complex64> {
        self.grid.check(&other.grid)?;
        let s: Complex64 = self.values.iter().zip(&other.values).map(|(a, b)| a * b.conj()).sum();
        Ok(s * self.grid.cell_volume())
    }

    /// Pointwise combination on a shared grid; drops analytic evaluators.
    pub fn zip_with<F: Fn(Complex64, Complex64) -> Complex64>(&self, other: &SampledSymbol, f: F) -> Result<SampledSymbol> {
        self.grid.check(&other.grid)?;
        let values = self.values.iter().zip(&other.values).map(|(&a, &b)| f(a, b)).collect();
        Ok(SampledSymbol { grid: self.grid, values, analytic: None })
    }

    pub fn sub(&self, other: &SampledSymbol) -> Result<SampledSymbol> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn add(&self, other: &SampledSymbol) -> Result<SampledSymbol> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn scale(&self, c: Complex64) -> SampledSymbol {
        let analytic = self.analytic.clone().map(|f| -> Evaluator { Arc::new(move |x: &[f64]| f(x) * c) });
        SampledSymbol { grid: self.grid, values: self.values.iter().map(|v| v * c).collect(), analytic }
    }

    pub fn map<F: Fn(Complex64) -> Complex64>(&self, f: F) -> SampledSymbol {
        SampledSymbol { grid: self.grid, values: self.values.iter().map(|&v| f(v)).collect(), analytic: None }
    }

    /// Same values viewed on a grid with a different measure.
    pub fn with_grid_measure(&self, measure: f64) -> SampledSymbol {
        SampledSymbol { grid: self.grid.with_measure(measure), values: self.values.clone(), analytic: self.analytic.clone() }
    }

    /// `b̌(X) = conj(b(-X))`, exact on nodes whose negation is a node, zero on the boundary layer.
    pub fn check_involution(&self) -> SampledSymbol {
        let g = self.grid;
        let n = g.points_per_axis();
        let values = (0..g.len())
            .map(|i| {
                let ks = g.unravel(i);
                if ks.contains(&0) {
                    return match &self.analytic {
                        Some(f) => {
                            let x: Vec<f64> = g.point(i).iter().map(|v| -v).collect();
                            f(&x).conj()
                        }
                        None => Complex64::new(0.0, 0.0),
                    };
                }
                let neg: Vec<usize> = ks.iter().map(|&k| n - k).collect();
                self.values[g.ravel(&neg)].conj()
            })
            .collect();
        let analytic = self.analytic.clone().map(|f| -> Evaluator {
            Arc::new(move |x: &[f64]| {
                let y: Vec<f64> = x.iter().map(|v| -v).collect();
                f(&y).conj()
            })
        });
        SampledSymbol { grid: g, values, analytic }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_geometry() {
        let g = Grid::new(2, 8.0, 128).unwrap();
        assert_eq!(g.spacing(), 0.125);
        assert_eq!(g.node(g.zero_index()), 0.0);
        assert_eq!(g.point(g.origin()), vec![0.0, 0.0]);
        assert_eq!(g.unravel(g.ravel(&[3, 77])), vec![3, 77]);
        assert!(Grid::new(2, 8.0, 100).is_err());
        assert!(Grid::new(2, 8.0, 4).is_err());
        assert!(Grid::new(2, -1.0, 8).is_err());
    }

    #[test]
    fn interpolation_is_exact_for_affine() {
        let g = Grid::new(2, 4.0, 16).unwrap();
        let s = SampledSymbol::from_fn(g, |x| Complex64::new(1.0 + 2.0 * x[0] - x[1], 0.5 * x[1]));
        let s = s.without_analytic();
        let v = s.eval(&[0.3, -1.7]);
        assert!((v - Complex64::new(1.0 + 0.6 + 1.7, -0.85)).norm() < 1e-12);
        assert_eq!(s.eval(&[5.0, 0.0]), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn involution_on_nodes() {
        let g = Grid::new(1, 4.0, 16).unwrap();
        let s = SampledSymbol::from_fn(g, |x| Complex64::new(x[0], x[0] * x[0]));
        let c = s.check_involution();
        let i = g.ravel(&[11]);
        assert!((c.at(i) - Complex64::new(-g.node(11), -g.node(11).powi(2))).norm() < 1e-14);
    }
}

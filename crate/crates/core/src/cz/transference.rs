//! Lifts between symbols on `G_e` and functions on `T × G_e`, with `T` sampled
//! at `K` uniform angles carrying mass `1/K` each.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::twist::{Grid, SampledSymbol};

pub const DEFAULT_ANGLES: usize = 64;

/// Values `φ(t_a, x_i)` stored angle-major, `t_a = e^{2πi a/K}`.
#[derive(Debug, Clone, PartialEq)]
pub struct TorusGridFunction {
    k: usize,
    grid: Grid,
    values: Vec<Complex64>,
}

impl TorusGridFunction {
    pub fn new(k: usize, grid: Grid, values: Vec<Complex64>) -> Result<Self> {
        if k < 8 {
            return Err(Error::InvalidGrid(format!("{k} angles; need at least 8")));
        }
        if values.len() != k * grid.len() {
            return Err(Error::DimensionMismatch { expected: k * grid.len(), got: values.len() });
        }
        if values.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::InvalidGrid("non-finite torus value".into()));
        }
        Ok(Self { k, grid, values })
    }

    pub fn from_fn<F: Fn(Complex64, &[f64]) -> Complex64>(k: usize, grid: Grid, f: F) -> Result<Self> {
        let values = (0..k)
            .flat_map(|a| {
                let t = angle(k, a);
                (0..grid.len()).map(move |i| (t, i)).collect::<Vec<_>>()
            })
            .map(|(t, i)| f(t, &grid.point(i)))
            .collect();
        Self::new(k, grid, values)
    }

    pub fn angles(&self) -> usize {
        self.k
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn at(&self, a: usize, i: usize) -> Complex64 {
        self.values[a * self.grid.len() + i]
    }

    /// `(Σ_a Σ_i |φ|^p h^d / K)^{1/p}`, summed slice by slice.
    pub fn lp_norm(&self, p: f64) -> f64 {
        let n = self.grid.len();
        let s: f64 = self
            .values
            .chunks(n)
            .map(|slice| slice.iter().map(|v| v.norm().powf(p)).sum::<f64>())
            .sum::<f64>()
            / self.k as f64;
        (s * self.grid.cell_volume()).powf(1.0 / p)
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        if self.k != other.k {
            return Err(Error::GridMismatch);
        }
        self.grid.check(&other.grid)?;
        Ok(self.values.iter().zip(&other.values).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max))
    }
}

/// `t_a = e^{2πi a/K}`.
pub fn angle(k: usize, a: usize) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * a as f64 / k as f64)
}

/// `ψ^♯(t, x) = t^{-1} ψ(x)`, with `t^{-1} = conj(t)` on the circle.
pub fn sharp_map(psi: &SampledSymbol, k: usize) -> Result<TorusGridFunction> {
    let values = (0..k).flat_map(|a| {
        let tinv = angle(k, a).conj();
        psi.values().iter().map(move |v| tinv * v)
    });
    TorusGridFunction::new(k, *psi.grid(), values.collect())
}

/// `φ^♭(x) = (1/K) Σ_a φ(t_a, x) t_a`.
pub fn flat_map(phi: &TorusGridFunction) -> Result<SampledSymbol> {
    let n = phi.grid.len();
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    for a in 0..phi.k {
        let t = angle(phi.k, a);
        for (o, v) in out.iter_mut().zip(&phi.values[a * n..(a + 1) * n]) {
            *o += v * t;
        }
    }
    let inv = 1.0 / phi.k as f64;
    out.iter_mut().for_each(|v| *v *= inv);
    SampledSymbol::from_values(phi.grid, out)
}

/// `(Pφ)(t, x) = t^{-1} φ^♭(x)`.
pub fn proj_p(phi: &TorusGridFunction) -> Result<TorusGridFunction> {
    sharp_map(&flat_map(phi)?, phi.k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::twist::symbols;

    fn torus_sample(grid: Grid) -> TorusGridFunction {
        TorusGridFunction::from_fn(DEFAULT_ANGLES, grid, |t, x| {
            let g = (-(x[0] * x[0] + x[1] * x[1])).exp();
            (t * t + Complex64::new(0.5, -0.25) + t.conj() * x[0]) * g
        })
        .unwrap()
    }

    #[test]
    fn sharp_then_flat_is_identity() {
        let grid = Grid::new(2, 4.0, 16).unwrap();
        let psi = symbols::hermite_gaussian(grid, 1, 1, [0.3, -0.2], 0.8);
        let back = flat_map(&sharp_map(&psi, DEFAULT_ANGLES).unwrap()).unwrap();
        assert!(back.sub(&psi).unwrap().max_abs() <= 1e-12);
    }

    #[test]
    fn projection_picks_the_inverse_character() {
        let grid = Grid::new(2, 4.0, 16).unwrap();
        let phi = torus_sample(grid);
        let p = proj_p(&phi).unwrap();
        let expected = TorusGridFunction::from_fn(DEFAULT_ANGLES, grid, |t, x| {
            t.conj() * x[0] * (-(x[0] * x[0] + x[1] * x[1])).exp()
        })
        .unwrap();
        assert!(p.max_abs_diff(&expected).unwrap() <= 1e-12);
        assert!(proj_p(&p).unwrap().max_abs_diff(&p).unwrap() <= 1e-12);
    }

    #[test]
    fn sharp_preserves_lp_norms() {
        let grid = Grid::new(2, 4.0, 16).unwrap();
        let psi = symbols::gaussian(grid, 0.7);
        let s = sharp_map(&psi, DEFAULT_ANGLES).unwrap();
        for p in [1.0, 1.5, 2.0, 3.0] {
            let rel = (s.lp_norm(p) - psi.lp_norm(p)).abs() / psi.lp_norm(p);
            assert!(rel <= 1e-14, "p = {p}: {rel:e}");
        }
        assert!(TorusGridFunction::new(4, grid, vec![]).is_err());
    }
}

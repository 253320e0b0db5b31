//! Smooth test symbols: Gaussians, Hermite-Gaussians and approximate identities.

use num_complex::Complex64;

use super::grid::{Grid, SampledSymbol};

/// Physicists' Hermite polynomial `H_n`.
pub fn hermite(n: u32, x: f64) -> f64 {
    let (mut a, mut b) = (1.0, 2.0 * x);
    if n == 0 {
        return a;
    }
    for k in 1..n {
        let c = 2.0 * x * b - 2.0 * k as f64 * a;
        a = b;
        b = c;
    }
    b
}

/// `e^{-|x|^2 / (2σ^2)}` in any dimension.
pub fn gaussian(grid: Grid, sigma: f64) -> SampledSymbol {
    SampledSymbol::from_fn(grid, move |x| {
        let r2: f64 = x.iter().map(|v| v * v).sum();
        Complex64::new((-r2 / (2.0 * sigma * sigma)).exp(), 0.0)
    })
}

/// `H_m((q-c_0)/σ) H_n((p-c_1)/σ) e^{-|x-c|^2/(2σ^2)}` on a plane grid.
pub fn hermite_gaussian(grid: Grid, m: u32, n: u32, c: [f64; 2], sigma: f64) -> SampledSymbol {
    SampledSymbol::from_fn(grid, move |x| {
        let u = (x[0] - c[0]) / sigma;
        let v = (x[1] - c[1]) / sigma;
        Complex64::new(hermite(m, u) * hermite(n, v) * (-(u * u + v * v) / 2.0).exp(), 0.0)
    })
}

/// Multiplies a symbol by `e^{i k·x}`.
pub fn modulated(s: &SampledSymbol, k: Vec<f64>) -> SampledSymbol {
    let base = s.analytic().cloned().expect("modulation needs an analytic symbol");
    SampledSymbol::from_fn(*s.grid(), move |x| {
        let ph: f64 = x.iter().zip(&k).map(|(a, b)| a * b).sum();
        base(x) * Complex64::from_polar(1.0, ph)
    })
}

/// Narrow Gaussian centred at `c`, normalized so its grid integral is exactly 1.
pub fn approximate_identity(grid: Grid, c: Vec<f64>, width: f64) -> SampledSymbol {
    let cc = c.clone();
    let raw = SampledSymbol::from_fn(grid, move |x| {
        let r2: f64 = x.iter().zip(&cc).map(|(a, b)| (a - b) * (a - b)).sum();
        Complex64::new((-r2 / (2.0 * width * width)).exp(), 0.0)
    });
    let total: f64 = raw.values().iter().map(|v| v.re).sum::<f64>() * grid.cell_volume();
    raw.scale(Complex64::new(1.0 / total, 0.0))
}

/// Five Hermite-Gaussian symbols with varied degrees, centres, widths and modulations,
/// all below `1e-12` on the boundary of an `L = 8` box.
pub fn hermite_family(grid: Grid) -> Vec<SampledSymbol> {
    vec![
        hermite_gaussian(grid, 0, 0, [0.0, 0.0], 1.0),
        hermite_gaussian(grid, 1, 0, [0.5, -0.3], 0.9),
        hermite_gaussian(grid, 0, 2, [-0.4, 0.2], 0.85),
        modulated(&hermite_gaussian(grid, 1, 1, [0.2, 0.3], 0.8), vec![0.7, -0.4]),
        modulated(&hermite_gaussian(grid, 2, 1, [-0.3, -0.2], 0.8), vec![-0.5, 0.9]),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hermite_values() {
        assert_eq!(hermite(0, 0.3), 1.0);
        assert_eq!(hermite(1, 0.3), 0.6);
        assert!((hermite(3, 0.5) - (8.0 * 0.125 - 12.0 * 0.5)).abs() < 1e-15);
    }

    #[test]
    fn approximate_identity_has_unit_mass() {
        let g = Grid::new(2, 4.0, 32).unwrap().with_measure(0.25);
        let a = approximate_identity(g, vec![1.0, 0.0], 0.3);
        let mass: f64 = a.values().iter().map(|v| v.re).sum::<f64>() * g.cell_volume();
        assert!((mass - 1.0).abs() < 1e-14);
        assert!(a.analytic_consistency().unwrap() < 1e-12);
    }
}

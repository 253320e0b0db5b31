//! Twisted convolution `(b1 *_e b2)(x) = ∫ e^{-iα(x,-y)} b1(x ·_e (-y)) b2(y) dy` on grids.

use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use super::grid::{Grid, SampledSymbol};
use super::group::PredualGroup;
use crate::error::{Error, Result};

fn check(group: &PredualGroup, grid: &Grid) -> Result<()> {
    if group.d() != grid.d() {
        return Err(Error::DimensionMismatch { expected: group.d(), got: grid.d() });
    }
    Ok(())
}

/// Trapezoid-rule twisted convolution at every node. Uses a row-wise FFT scheme
/// when the group law is addition and `α` is bilinear without an `x_d y_d` term;
/// otherwise evaluates the full double sum.
pub fn twisted_convolve(group: &PredualGroup, b1: &SampledSymbol, b2: &SampledSymbol) -> Result<SampledSymbol> {
    b1.grid().check(b2.grid())?;
    check(group, b1.grid())?;
    match group.bilinear_alpha() {
        Some(a) if group.is_additive() && a[group.d() - 1][group.d() - 1] == 0.0 => {
            Ok(convolve_fast(a, b1, b2))
        }
        _ => Ok(convolve_direct(group, b1, b2)),
    }
}

/// Direct double sum; reference route for every group.
pub fn twisted_convolve_direct(group: &PredualGroup, b1: &SampledSymbol, b2: &SampledSymbol) -> Result<SampledSymbol> {
    b1.grid().check(b2.grid())?;
    check(group, b1.grid())?;
    Ok(convolve_direct(group, b1, b2))
}

fn convolve_direct(group: &PredualGroup, b1: &SampledSymbol, b2: &SampledSymbol) -> SampledSymbol {
    let grid = *b1.grid();
    let vol = grid.cell_volume();
    let support: Vec<(Vec<f64>, Vec<f64>, Complex64)> = (0..grid.len())
        .filter(|&j| b2.at(j) != Complex64::new(0.0, 0.0))
        .map(|j| {
            let y = grid.point(j);
            let ny: Vec<f64> = y.iter().map(|v| -v).collect();
            (y, ny, b2.at(j))
        })
        .collect();
    let values = crate::par::map_range(grid.len(), |i| {
        let x = grid.point(i);
        let mut acc = Complex64::new(0.0, 0.0);
        for (_, ny, v) in &support {
            let z = group.product(&x, ny);
            let phase = Complex64::from_polar(1.0, -group.alpha(&x, ny));
            acc += phase * b1.eval(&z) * v;
        }
        acc * vol
    });
    SampledSymbol::from_values(grid, values).expect("finite")
}

/// `b1` at displacement multi-index `t ∈ [-(N-1), N-1]^d` (coordinate `h t`).
fn extended(b1: &SampledSymbol, t: &[i64]) -> Complex64 {
    let g = b1.grid();
    let half = g.zero_index() as i64;
    let n = g.points_per_axis() as i64;
    if t.iter().all(|&k| (0..n).contains(&(k + half))) {
        let ks: Vec<usize> = t.iter().map(|&k| (k + half) as usize).collect();
        return b1.at(g.ravel(&ks));
    }
    match b1.analytic() {
        Some(f) => {
            let x: Vec<f64> = t.iter().map(|&k| k as f64 * g.spacing()).collect();
            f(&x)
        }
        None => Complex64::new(0.0, 0.0),
    }
}

fn convolve_fast(a: &[Vec<f64>], b1: &SampledSymbol, b2: &SampledSymbol) -> SampledSymbol {
    let grid = *b1.grid();
    let d = grid.d();
    let n = grid.points_per_axis();
    let vol = grid.cell_volume();
    let m = (4 * n).next_power_of_two();
    let mut planner = FftPlanner::<f64>::new();
    let fwd: Arc<dyn Fft<f64>> = planner.plan_fft_forward(m);
    let inv: Arc<dyn Fft<f64>> = planner.plan_fft_inverse(m);

    // Leading displacement multi-indices t' ∈ [-(N-1), N-1]^{d-1}, each with the FFT of its last-axis row.
    let span = 2 * n - 1;
    let lead_count = span.pow((d - 1) as u32);
    let lead_index = |t: &[i64]| t.iter().fold(0usize, |acc, &k| acc * span + (k + n as i64 - 1) as usize);
    // `None` marks a row of `b1` that vanishes identically; its pairs contribute nothing.
    let rows: Vec<Option<Vec<Complex64>>> = crate::par::map_range(lead_count, |r| {
        let mut t = vec![0i64; d];
        let mut rem = r;
        for axis in (0..d - 1).rev() {
            t[axis] = (rem % span) as i64 - (n as i64 - 1);
            rem /= span;
        }
        let mut buf = vec![Complex64::new(0.0, 0.0); m];
        for (s, slot) in buf.iter_mut().enumerate().take(span) {
            t[d - 1] = s as i64 - (n as i64 - 1);
            *slot = extended(b1, &t);
        }
        if buf.iter().all(|v| *v == Complex64::new(0.0, 0.0)) {
            return None;
        }
        let mut scratch = vec![Complex64::new(0.0, 0.0); fwd.get_inplace_scratch_len()];
        fwd.process_with_scratch(&mut buf, &mut scratch);
        Some(buf)
    });

    let lead_nodes = n.pow((d - 1) as u32);
    let coord = |k: usize| grid.node(k);
    let unravel_lead = |mut r: usize| -> Vec<usize> {
        let mut out = vec![0; d - 1];
        for axis in (0..d - 1).rev() {
            out[axis] = r % n;
            r /= n;
        }
        out
    };
    let last_nodes: Vec<f64> = (0..n).map(coord).collect();
    let scale = 1.0 / m as f64;

    let out_rows: Vec<Vec<Complex64>> = crate::par::map_range(lead_nodes, |xr| {
        let xi = unravel_lead(xr);
        let x: Vec<f64> = xi.iter().map(|&k| coord(k)).collect();
        // Coefficient of y_d in x^T A y and, per y', of x_d.
        let col: f64 = (0..d - 1).map(|i| a[i][d - 1] * x[i]).sum();
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        let mut buf = vec![Complex64::new(0.0, 0.0); m];
        let mut scratch = vec![Complex64::new(0.0, 0.0); fwd.get_inplace_scratch_len().max(inv.get_inplace_scratch_len())];
        for yr in 0..lead_nodes {
            let yi = unravel_lead(yr);
            let y: Vec<f64> = yi.iter().map(|&k| coord(k)).collect();
            let base = yr * n;
            let t: Vec<i64> = xi.iter().zip(&yi).map(|(&p, &q)| p as i64 - q as i64).collect();
            let Some(spectrum) = &rows[lead_index(&t)] else {
                continue;
            };
            if (0..n).all(|k| b2.at(base + k) == Complex64::new(0.0, 0.0)) {
                continue;
            }
            let mut s = 0.0;
            for i in 0..d - 1 {
                for j in 0..d - 1 {
                    s += a[i][j] * x[i] * y[j];
                }
            }
            let row_coef: f64 = (0..d - 1).map(|j| a[d - 1][j] * y[j]).sum();
            buf.iter_mut().for_each(|v| *v = Complex64::new(0.0, 0.0));
            for k in 0..n {
                buf[k] = b2.at(base + k) * Complex64::from_polar(1.0, col * last_nodes[k]);
            }
            fwd.process_with_scratch(&mut buf, &mut scratch);
            for (v, r) in buf.iter_mut().zip(spectrum) {
                *v *= r;
            }
            inv.process_with_scratch(&mut buf, &mut scratch);
            let e = Complex64::from_polar(1.0, s);
            for k in 0..n {
                out[k] += e * Complex64::from_polar(1.0, row_coef * last_nodes[k]) * buf[k + n - 1] * scale;
            }
        }
        out.iter_mut().for_each(|v| *v *= vol);
        out
    });
    SampledSymbol::from_values(grid, out_rows.into_iter().flatten().collect()).expect("finite")
}

/// `(φ *_e δ_v)(x) = e^{-iα(x,-v)} φ(x ·_e (-v))`, evaluated pointwise. Shifts by
/// lattice vectors under an additive law use exact index displacement.
pub fn delta_action(group: &PredualGroup, phi: &SampledSymbol, v: &[f64]) -> Result<SampledSymbol> {
    let grid = *phi.grid();
    check(group, &grid)?;
    if v.len() != grid.d() {
        return Err(Error::DimensionMismatch { expected: grid.d(), got: v.len() });
    }
    let nv: Vec<f64> = v.iter().map(|c| -c).collect();
    let h = grid.spacing();
    let shift: Option<Vec<i64>> = if group.is_additive() {
        v.iter()
            .map(|c| {
                let s = (c / h).round();
                ((c / h - s).abs() < 1e-9).then_some(s as i64)
            })
            .collect()
    } else {
        None
    };
    let half = grid.zero_index() as i64;
    let values = crate::par::map_range(grid.len(), |i| {
        let x = grid.point(i);
        let phase = Complex64::from_polar(1.0, -group.alpha(&x, &nv));
        let val = match &shift {
            Some(s) => {
                let ks = grid.unravel(i);
                let t: Vec<i64> = ks.iter().zip(s).map(|(&k, &sh)| k as i64 - sh - half).collect();
                extended(phi, &t)
            }
            None => phi.eval(&group.product(&x, &nv)),
        };
        phase * val
    });
    SampledSymbol::from_values(grid, values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::orbit::OrbitData;
    use crate::rational::unit_vec;
    use crate::twist::symbols;

    fn h3_group() -> PredualGroup {
        PredualGroup::from_orbit(&OrbitData::new(&catalog::h3(), &unit_vec(3, 0)).unwrap()).unwrap()
    }

    #[test]
    fn fast_route_matches_direct_sum() {
        let g = h3_group();
        let grid = Grid::new(2, 4.0, 16).unwrap().with_measure(0.3);
        let a = symbols::hermite_gaussian(grid, 1, 0, [0.5, -0.25], 1.0);
        let b = symbols::hermite_gaussian(grid, 0, 2, [-0.5, 0.0], 0.7);
        let fast = twisted_convolve(&g, &a, &b).unwrap();
        let slow = twisted_convolve_direct(&g, &a, &b).unwrap();
        let err = fast.sub(&slow).unwrap().max_abs();
        assert!(err < 1e-12 * (1.0 + slow.max_abs()), "{err}");
    }

    #[test]
    fn zero_twist_of_gaussians_is_gaussian() {
        let g = PredualGroup::abelian(2);
        let grid = Grid::new(2, 8.0, 64).unwrap();
        let a = SampledSymbol::from_fn(grid, |x| Complex64::new((-(x[0] * x[0] + x[1] * x[1]) / 2.0).exp(), 0.0));
        let c = twisted_convolve(&g, &a, &a).unwrap();
        // e^{-|x|^2/2} * e^{-|x|^2/2} = π e^{-|x|^2/4} in two dimensions.
        let pi = std::f64::consts::PI;
        let exact = SampledSymbol::from_fn(grid, move |x| Complex64::new(pi * (-(x[0] * x[0] + x[1] * x[1]) / 4.0).exp(), 0.0));
        assert!(c.sub(&exact).unwrap().max_abs() < 1e-10);
    }

    #[test]
    fn delta_at_zero_is_identity() {
        let g = h3_group();
        let grid = Grid::new(2, 8.0, 32).unwrap();
        let a = symbols::gaussian(grid, 1.0);
        let d = delta_action(&g, &a, &[0.0, 0.0]).unwrap();
        assert!(d.sub(&a).unwrap().max_abs() == 0.0);
    }
}

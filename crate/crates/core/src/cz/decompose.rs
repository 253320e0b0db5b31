//! Twisted Calderón–Zygmund decomposition `f = g + Σ b_i`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::twist::{Grid, PredualGroup, SampledSymbol};

use super::cover::Covering;

/// Good part, bad parts and the measured constants of one decomposition.
#[derive(Debug, Clone)]
pub struct CZResult {
    pub alpha: f64,
    pub covering: Covering,
    pub good: SampledSymbol,
    pub bad: Vec<SampledSymbol>,
    pub checks: DecompositionChecks,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecompositionChecks {
    /// `max |f - g - Σ b_i| / max |f|`.
    pub reconstruction: f64,
    /// `max_i |Σ_z b_i(z) γ(z_i, -z) h^d| / ‖f‖_1`.
    pub mean_zero: f64,
    /// Each `b_i` vanishes off its ball.
    pub support_contained: bool,
    /// `f ≤ α` off the union of balls.
    pub below_level_outside: bool,
    pub good_sup_ratio: f64,
    pub good_l1_ratio: f64,
    pub bad_l1_ratio: f64,
    /// `max` of the three ratios above.
    pub c_double_prime: f64,
}

fn gamma(group: &PredualGroup, x: &[f64], y: &[f64]) -> Complex64 {
    Complex64::from_polar(1.0, group.alpha(x, y))
}

/// Builds `η_i = χ_i / Σ_j χ_j`,
/// `c_i = |B_i|^{-1} Σ_u f(u) η_i(u) γ(z_i, -u) h^d`,
/// `b_i = f η_i - c_i χ_i γ(z_i, -·)^{-1}` and `g = f` off the balls,
/// `g = Σ_i c_i χ_i γ(z_i, -·)^{-1}` on them.
pub fn cz_decompose(
    f: &[f64],
    covering: Option<&Covering>,
    group: &PredualGroup,
    grid: &Grid,
) -> Result<CZResult> {
    let covering = covering.ok_or(Error::CoverMissing)?;
    if f.len() != grid.len() {
        return Err(Error::DimensionMismatch { expected: grid.len(), got: f.len() });
    }
    if group.d() != grid.d() {
        return Err(Error::DimensionMismatch { expected: group.d(), got: grid.d() });
    }
    let alpha = covering.alpha;
    let mut count = vec![0usize; grid.len()];
    for b in &covering.balls {
        b.members.iter().for_each(|&j| count[j] += 1);
    }
    if f.iter().zip(&count).any(|(&v, &c)| v > alpha && c == 0) {
        return Err(Error::CoverMissing);
    }
    let vol = grid.cell_volume();
    let zero = Complex64::new(0.0, 0.0);

    let mut good: Vec<Complex64> =
        f.iter().zip(&count).map(|(&v, &c)| if c == 0 { Complex64::new(v, 0.0) } else { zero }).collect();
    let mut bad = Vec::with_capacity(covering.balls.len());
    let mut mean_zero: f64 = 0.0;
    let f_l1: f64 = f.iter().map(|v| v.abs()).sum::<f64>() * vol;
    let mut support_contained = true;

    for ball in &covering.balls {
        let zi = grid.point(ball.center);
        let phases: Vec<Complex64> = ball
            .members
            .iter()
            .map(|&u| {
                let nu: Vec<f64> = grid.point(u).iter().map(|v| -v).collect();
                gamma(group, &zi, &nu)
            })
            .collect();
        let c: Complex64 = ball
            .members
            .iter()
            .zip(&phases)
            .map(|(&u, ph)| ph * (f[u] / count[u] as f64))
            .sum::<Complex64>()
            * vol
            / ball.volume(grid);
        let mut b = vec![zero; grid.len()];
        for (&z, ph) in ball.members.iter().zip(&phases) {
            let tail = c / ph;
            b[z] = Complex64::new(f[z] / count[z] as f64, 0.0) - tail;
            good[z] += tail;
        }
        let twisted: Complex64 = ball.members.iter().zip(&phases).map(|(&z, ph)| b[z] * ph).sum::<Complex64>() * vol;
        if f_l1 > 0.0 {
            mean_zero = mean_zero.max(twisted.norm() / f_l1);
        }
        support_contained &= b.iter().enumerate().all(|(i, v)| *v == zero || ball.contains(i));
        bad.push(SampledSymbol::from_values(*grid, b)?);
    }
    let good = SampledSymbol::from_values(*grid, good)?;

    let f_max = f.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let mut reconstruction: f64 = 0.0;
    for (i, &v) in f.iter().enumerate() {
        let sum = bad.iter().fold(good.at(i), |acc, b| acc + b.at(i));
        reconstruction = reconstruction.max((Complex64::new(v, 0.0) - sum).norm());
    }
    if f_max > 0.0 {
        reconstruction /= f_max;
    }
    let ratio = |num: f64, den: f64| if den > 0.0 { num / den } else { 0.0 };
    let good_sup_ratio = good.max_abs() / alpha;
    let good_l1_ratio = ratio(good.l1_norm(), f_l1);
    let bad_l1_ratio = ratio(bad.iter().map(SampledSymbol::l1_norm).sum(), f_l1);
    let checks = DecompositionChecks {
        reconstruction,
        mean_zero,
        support_contained,
        below_level_outside: f.iter().zip(&count).all(|(&v, &c)| c > 0 || v <= alpha),
        good_sup_ratio,
        good_l1_ratio,
        bad_l1_ratio,
        c_double_prime: good_sup_ratio.max(good_l1_ratio).max(bad_l1_ratio),
    };
    Ok(CZResult { alpha, covering: covering.clone(), good, bad, checks })
}

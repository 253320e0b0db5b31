//! Kernel-side checks: the twisted Hörmander integral and empirical weak-(1,1) ratios.
//!
//! Kernel operators act by `(Kf)(x) = Σ_y γ(x, -y) k(x (-y)) f(y) h^d` with
//! `γ = e^{iα}`. This is twisted convolution for the conjugate cocycle.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::twist::{twisted_convolve, Grid, PredualGroup, SampledSymbol};

use super::pseudo::PseudoDistance;

/// `(Kf)` for the kernel `k`.
pub fn kernel_apply(group: &PredualGroup, k: &SampledSymbol, f: &SampledSymbol) -> Result<SampledSymbol> {
    twisted_convolve(&group.conjugate(), k, f)
}

#[derive(Debug, Clone, PartialEq)]
pub struct HormanderEstimate {
    pub value: f64,
    /// Node realizing the supremum, if any `u` was admissible.
    pub argmax: Option<Vec<f64>>,
    pub c2: f64,
    /// Number of admissible `u`.
    pub samples: usize,
}

/// `sup_u Σ_{m(z) > C2 m(u)} |γ(z, -u) k(z (-u)) - k(z)| h^d` over nodes `u`
/// with `0 < m(u) ≤ L / C2`. `k` is read through its analytic evaluator when present.
pub fn hormander_twist_estimate(
    k: &SampledSymbol,
    m: &PseudoDistance,
    c2: f64,
    grid: &Grid,
) -> Result<HormanderEstimate> {
    if c2 <= 2.0 * m.c_m() {
        return Err(Error::C2TooSmall { c2, c_m: m.c_m() });
    }
    grid.check(k.grid())?;
    let group = m.group();
    if group.d() != grid.d() {
        return Err(Error::DimensionMismatch { expected: group.d(), got: grid.d() });
    }
    let vol = grid.cell_volume();
    let points: Vec<Vec<f64>> = (0..grid.len()).map(|i| grid.point(i)).collect();
    let kz: Vec<Complex64> = points.iter().map(|z| k.eval(z)).collect();
    let mz: Vec<f64> = points.iter().map(|z| m.eval(z)).collect();
    let admissible: Vec<usize> =
        (0..grid.len()).filter(|&i| mz[i] > 0.0 && mz[i] <= grid.half_width() / c2).collect();

    let values = crate::par::map_range(admissible.len(), |a| {
        let u = &points[admissible[a]];
        let nu: Vec<f64> = u.iter().map(|v| -v).collect();
        let cut = c2 * mz[admissible[a]];
        let mut acc = 0.0;
        for (zi, z) in points.iter().enumerate() {
            if mz[zi] <= cut {
                continue;
            }
            let shifted = k.eval(&group.product(z, &nu));
            if shifted == Complex64::new(0.0, 0.0) && kz[zi] == Complex64::new(0.0, 0.0) {
                continue;
            }
            let g = Complex64::from_polar(1.0, group.alpha(z, &nu));
            acc += (g * shifted - kz[zi]).norm();
        }
        acc * vol
    });
    let best = values.iter().enumerate().fold(None, |best: Option<(usize, f64)>, (i, &v)| match best {
        Some((_, b)) if b >= v => best,
        _ => Some((i, v)),
    });
    Ok(HormanderEstimate {
        value: best.map_or(0.0, |b| b.1),
        argmax: best.map(|b| points[admissible[b.0]].clone()),
        c2,
        samples: admissible.len(),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Weak11Level {
    pub alpha: f64,
    /// `|{|Kf| > α}|`.
    pub measure: f64,
    /// `α |{|Kf| > α}| / ‖f‖_1`.
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Weak11Report {
    pub levels: Vec<Weak11Level>,
    pub f_l1: f64,
    /// Largest ratio: the empirical weak-type constant.
    pub a1: f64,
    /// `max / min` over the levels; `1` when every level set is empty.
    pub spread: f64,
}

fn level_report(kf: &SampledSymbol, f_l1: f64, alphas: &[f64]) -> Weak11Report {
    let vol = kf.grid().cell_volume();
    let levels: Vec<Weak11Level> = alphas
        .iter()
        .map(|&alpha| {
            let measure = kf.values().iter().filter(|v| v.norm() > alpha).count() as f64 * vol;
            let ratio = if f_l1 > 0.0 { alpha * measure / f_l1 } else { 0.0 };
            Weak11Level { alpha, measure, ratio }
        })
        .collect();
    let a1 = levels.iter().map(|l| l.ratio).fold(0.0, f64::max);
    let lo = levels.iter().map(|l| l.ratio).fold(f64::INFINITY, f64::min);
    let spread = if a1 == 0.0 { 1.0 } else if lo == 0.0 { f64::INFINITY } else { a1 / lo };
    Weak11Report { levels, f_l1, a1, spread }
}

/// Measures `α |{|Kf| > α}| / ‖f‖_1` at each level.
pub fn weak11_empirical(
    group: &PredualGroup,
    k: &SampledSymbol,
    f: &SampledSymbol,
    alphas: &[f64],
) -> Result<Weak11Report> {
    let kf = kernel_apply(group, k, f)?;
    Ok(level_report(&kf, f.l1_norm(), alphas))
}

/// Reruns with `2f` at levels `2α` and reports whether the level sets and ratios
/// coincide bit for bit.
pub fn weak11_scaling_check(
    group: &PredualGroup,
    k: &SampledSymbol,
    f: &SampledSymbol,
    alphas: &[f64],
) -> Result<bool> {
    let kf = kernel_apply(group, k, f)?;
    let f2 = f.scale(Complex64::new(2.0, 0.0));
    let kf2 = kernel_apply(group, k, &f2)?;
    let doubled: Vec<f64> = alphas.iter().map(|a| 2.0 * a).collect();
    let base = level_report(&kf, f.l1_norm(), alphas);
    let scaled = level_report(&kf2, f2.l1_norm(), &doubled);
    let sets_equal = alphas.iter().all(|&a| {
        kf.values().iter().zip(kf2.values()).all(|(u, v)| (u.norm() > a) == (v.norm() > 2.0 * a))
    });
    Ok(sets_equal && base.levels.iter().zip(&scaled.levels).all(|(a, b)| a.ratio == b.ratio))
}

/// `‖x‖^{-a}` on `r0 < ‖x‖ < r1`, Euclidean norm, with its analytic evaluator.
pub fn truncated_power(grid: Grid, a: f64, r0: f64, r1: f64) -> SampledSymbol {
    SampledSymbol::from_fn(grid, move |x| {
        let r = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        if r > r0 && r < r1 { Complex64::new(r.powf(-a), 0.0) } else { Complex64::new(0.0, 0.0) }
    })
}

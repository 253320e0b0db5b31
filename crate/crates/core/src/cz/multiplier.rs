//! Pedersen multipliers `M = T(u)` with `C_M φ = u *_e φ`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::twist::{
    twisted_convolve, verify_pedersen_identities, DiscretizedOperator, PedersenCalculus, PredualGroup,
    SampledSymbol,
};

#[derive(Debug, Clone, PartialEq)]
pub struct MultiplierReport {
    /// `‖T(C_M φ) - M T(φ)‖_HS / (‖u‖_2 ‖φ‖_2)` per test symbol, with `M T(φ)` built column by column.
    pub definition: Vec<f64>,
    /// The same residual as reported by the Pedersen identity checker.
    pub pedersen_route: Vec<f64>,
    /// `max |definition - pedersen_route|`.
    pub route_agreement: f64,
    /// `‖u *_e φ - Σ_v u(v) (δ_v *_e φ) h^d‖_2 / (‖u‖_1 ‖φ‖_2)`.
    pub superposition: Vec<f64>,
    /// Largest share of `‖u‖_1` skipped by the left-delta route.
    pub superposition_dropped: f64,
    /// `‖C_M(φ *_e ψ) - (C_M φ) *_e ψ‖_2 / (‖u‖_2 ‖φ‖_2 ‖ψ‖_2)` over consecutive pairs.
    pub associativity: Vec<f64>,
    /// `‖M T(φ) - T(φ)‖_HS / ‖T(φ)‖_HS`: how far `M` is from the identity on the family.
    pub identity_defect: Vec<f64>,
}

impl MultiplierReport {
    pub fn max_residual(&self) -> f64 {
        self.definition
            .iter()
            .chain(&self.superposition)
            .chain(&self.associativity)
            .fold(0.0, |a, &b| a.max(b))
    }
}

fn product_by_columns(m: &DiscretizedOperator, t: &DiscretizedOperator) -> Result<DiscretizedOperator> {
    let n = t.size();
    if m.size() != n {
        return Err(Error::GridMismatch);
    }
    let mut out = vec![Complex64::new(0.0, 0.0); n * n];
    for l in 0..n {
        let col: Vec<Complex64> = (0..n).map(|k| t.kernel(k, l)).collect();
        for (k, v) in m.apply(&col).into_iter().enumerate() {
            out[k * n + l] = v;
        }
    }
    DiscretizedOperator::from_matrix(n, t.weight(), out)
}

/// `(δ_v *_e φ)(x) = e^{-iα(x, -y)} φ(y)` with `y = -((-x) ·_e v)`.
pub fn left_delta_action(group: &PredualGroup, phi: &SampledSymbol, v: &[f64]) -> Result<SampledSymbol> {
    let grid = *phi.grid();
    if v.len() != grid.d() || group.d() != grid.d() {
        return Err(Error::DimensionMismatch { expected: grid.d(), got: v.len() });
    }
    let h = grid.spacing();
    let n = grid.points_per_axis() as i64;
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
    let values = crate::par::map_range(grid.len(), |i| {
        let x = grid.point(i);
        let nx: Vec<f64> = x.iter().map(|c| -c).collect();
        let w = group.product(&nx, v);
        let y: Vec<f64> = w.iter().map(|c| -c).collect();
        let phase = Complex64::from_polar(1.0, -group.alpha(&x, &w));
        let val = match &shift {
            Some(s) => {
                let ks: Option<Vec<usize>> = grid
                    .unravel(i)
                    .iter()
                    .zip(s)
                    .map(|(&k, &sh)| {
                        let t = k as i64 - sh;
                        (0..n).contains(&t).then_some(t as usize)
                    })
                    .collect();
                match ks {
                    Some(ks) => phi.at(grid.ravel(&ks)),
                    None => {
                        phi.analytic().map_or(Complex64::new(0.0, 0.0), |f| f(&y))
                    }
                }
            }
            None => phi.eval(&y),
        };
        phase * val
    });
    SampledSymbol::from_values(grid, values)
}

/// `Σ_v u(v) (δ_v *_e φ) h^d` over the nodes with `|u(v)| > cutoff · max|u|`.
/// Also returns the share of `‖u‖_1` carried by the skipped nodes.
pub fn superposition_convolve(
    group: &PredualGroup,
    u: &SampledSymbol,
    phi: &SampledSymbol,
    cutoff: f64,
) -> Result<(SampledSymbol, f64)> {
    u.grid().check(phi.grid())?;
    let grid = *u.grid();
    let vol = grid.cell_volume();
    let floor = cutoff * u.max_abs();
    let mut acc = SampledSymbol::zeros(grid);
    let mut dropped = 0.0;
    for j in 0..grid.len() {
        let c = u.at(j);
        if c.norm() <= floor {
            dropped += c.norm();
            continue;
        }
        let shifted = left_delta_action(group, phi, &grid.point(j))?;
        acc = acc.add(&shifted.scale(c * vol))?;
    }
    let l1 = u.l1_norm();
    Ok((acc, if l1 > 0.0 { dropped * vol / l1 } else { 0.0 }))
}

/// Relative cutoff used by [`multiplier_check`] for the left-delta route.
pub const SUPERPOSITION_CUTOFF: f64 = 1e-16;

/// Checks `T(C_M φ) = M T(φ)`, the left-delta route to `u *_e φ`, and
/// `C_M(φ *_e ψ) = (C_M φ) *_e ψ` over `family`.
pub fn multiplier_check(
    calc: &PedersenCalculus,
    group: &PredualGroup,
    u: &SampledSymbol,
    family: &[SampledSymbol],
) -> Result<MultiplierReport> {
    let m = calc.transform(u)?;
    let nu = u.l2_norm();
    let nu1 = u.l1_norm();
    let rel = |r: f64, s: f64| if s == 0.0 { r } else { r / s };
    let mut rep = MultiplierReport {
        definition: Vec::new(),
        pedersen_route: Vec::new(),
        route_agreement: 0.0,
        superposition: Vec::new(),
        superposition_dropped: 0.0,
        associativity: Vec::new(),
        identity_defect: Vec::new(),
    };
    for (i, phi) in family.iter().enumerate() {
        let cm = twisted_convolve(group, u, phi)?;
        let tphi = calc.transform(phi)?;
        let mt = product_by_columns(&m, &tphi)?;
        let def = rel(calc.transform(&cm)?.sub(&mt)?.hs_norm(), nu * phi.l2_norm());
        let ped = verify_pedersen_identities(calc, group, u, phi)?.homomorphism;
        rep.route_agreement = rep.route_agreement.max((def - ped).abs());
        rep.definition.push(def);
        rep.pedersen_route.push(ped);

        let (sup, dropped) = superposition_convolve(group, u, phi, SUPERPOSITION_CUTOFF)?;
        rep.superposition_dropped = rep.superposition_dropped.max(dropped);
        rep.superposition.push(rel(cm.sub(&sup)?.l2_norm(), nu1 * phi.l2_norm()));

        let psi = &family[(i + 1) % family.len()];
        let lhs = twisted_convolve(group, u, &twisted_convolve(group, phi, psi)?)?;
        let rhs = twisted_convolve(group, &cm, psi)?;
        rep.associativity.push(rel(lhs.sub(&rhs)?.l2_norm(), nu * phi.l2_norm() * psi.l2_norm()));

        rep.identity_defect.push(rel(mt.sub(&tphi)?.hs_norm(), tphi.hs_norm()));
    }
    Ok(rep)
}

/// `‖u *_e φ‖_p / ‖φ‖_p` for each `p`, maximized over the family, next to `‖u‖_1`.
pub fn lp_ratios(group: &PredualGroup, u: &SampledSymbol, family: &[SampledSymbol], ps: &[f64]) -> Result<Vec<(f64, f64)>> {
    let convs: Vec<SampledSymbol> = family.iter().map(|phi| twisted_convolve(group, u, phi)).collect::<Result<_>>()?;
    Ok(ps
        .iter()
        .map(|&p| {
            let worst = family
                .iter()
                .zip(&convs)
                .map(|(phi, c)| c.lp_norm(p) / phi.lp_norm(p))
                .fold(0.0, f64::max);
            (p, worst)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::orbit::OrbitData;
    use crate::rational::unit_vec;
    use crate::twist::{delta_action, symbols};

    fn h3() -> PredualGroup {
        let o = OrbitData::new(&catalog::h3(), &unit_vec(3, 0)).unwrap();
        PredualGroup::from_orbit(&o).unwrap()
    }

    #[test]
    fn left_and_right_deltas_at_zero_are_identity() {
        let g = h3();
        let calc = PedersenCalculus::calibrate(8.0, 32).unwrap();
        let phi = symbols::gaussian(*calc.plane(), 1.0);
        let l = left_delta_action(&g, &phi, &[0.0, 0.0]).unwrap();
        let r = delta_action(&g, &phi, &[0.0, 0.0]).unwrap();
        assert!(l.sub(&phi).unwrap().max_abs() < 1e-15);
        assert!(r.sub(&phi).unwrap().max_abs() < 1e-15);
    }

    #[test]
    fn zero_multiplier_has_zero_residuals() {
        let g = h3();
        let calc = PedersenCalculus::calibrate(8.0, 32).unwrap();
        let fam = vec![symbols::gaussian(*calc.plane(), 1.0)];
        let rep = multiplier_check(&calc, &g, &SampledSymbol::zeros(*calc.plane()), &fam).unwrap();
        assert_eq!(rep.max_residual(), 0.0);
        assert_eq!(rep.route_agreement, 0.0);
    }

    #[test]
    fn lp_ratios_obey_young() {
        let g = h3();
        let grid = *PedersenCalculus::calibrate(8.0, 32).unwrap().plane();
        let u = crate::cz::truncated_power(grid, 1.5, 0.5, 2.0);
        let fam = vec![symbols::gaussian(grid, 1.0), symbols::hermite_gaussian(grid, 1, 0, [0.5, 0.0], 0.9)];
        for (_, r) in lp_ratios(&g, &u, &fam, &[1.25, 1.5, 2.0]).unwrap() {
            assert!(r <= u.l1_norm() * (1.0 + 1e-9));
        }
    }
}

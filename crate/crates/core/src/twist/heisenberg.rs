//! Discretized Pedersen transform for the Heisenberg group acting on `L^2(R)`.
//!
//! Convention: `(π(exp(q X_2 + p X_3)) f)(x) = e^{i(q x + q p / 2)} f(x + p)`, so
//! `T(b)` has kernel `K(x, y) = ρ ∫ b(q, y - x) e^{i q (x + y) / 2} dq`.

use num_complex::Complex64;

use super::convolve::twisted_convolve;
use super::grid::{Grid, SampledSymbol};
use super::group::PredualGroup;
use super::symbols;
use crate::error::{Error, Result};

/// Square complex matrix acting on functions on a line grid with quadrature weight `w`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscretizedOperator {
    n: usize,
    weight: f64,
    matrix: Vec<Complex64>,
}

impl DiscretizedOperator {
    pub fn zero(n: usize, weight: f64) -> Self {
        Self { n, weight, matrix: vec![Complex64::new(0.0, 0.0); n * n] }
    }

    pub fn from_matrix(n: usize, weight: f64, matrix: Vec<Complex64>) -> Result<Self> {
        if matrix.len() != n * n {
            return Err(Error::DimensionMismatch { expected: n * n, got: matrix.len() });
        }
        Ok(Self { n, weight, matrix })
    }

    /// Kernel `K(x_k, x_l)` on the nodes; `f ↦ Σ_l K(x_k, x_l) f(x_l) w`.
    pub fn kernel(&self, k: usize, l: usize) -> Complex64 {
        self.matrix[k * self.n + l]
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn weight(&self) -> f64 {
        self.weight
    }

    pub fn matrix(&self) -> &[Complex64] {
        &self.matrix
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.n != other.n || self.weight != other.weight {
            return Err(Error::GridMismatch);
        }
        Ok(())
    }

    pub fn apply(&self, f: &[Complex64]) -> Vec<Complex64> {
        (0..self.n)
            .map(|k| {
                let row = &self.matrix[k * self.n..(k + 1) * self.n];
                row.iter().zip(f).map(|(a, b)| a * b).sum::<Complex64>() * self.weight
            })
            .collect()
    }

    /// Kernel of the composition `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let n = self.n;
        let w = self.weight;
        let rows = crate::par::map_range(n, |k| {
            let mut row = vec![Complex64::new(0.0, 0.0); n];
            for m in 0..n {
                let a = self.matrix[k * n + m];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let brow = &other.matrix[m * n..(m + 1) * n];
                for (r, b) in row.iter_mut().zip(brow) {
                    *r += a * b;
                }
            }
            row.iter_mut().for_each(|v| *v *= w);
            row
        });
        Ok(Self { n, weight: w, matrix: rows.into_iter().flatten().collect() })
    }

    pub fn adjoint(&self) -> Self {
        let n = self.n;
        let mut m = vec![Complex64::new(0.0, 0.0); n * n];
        for k in 0..n {
            for l in 0..n {
                m[k * n + l] = self.matrix[l * n + k].conj();
            }
        }
        Self { n, weight: self.weight, matrix: m }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let matrix = self.matrix.iter().zip(&other.matrix).map(|(a, b)| a - b).collect();
        Ok(Self { n: self.n, weight: self.weight, matrix })
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|k| self.matrix[k * self.n + k]).sum::<Complex64>() * self.weight
    }

    pub fn hs_norm(&self) -> f64 {
        self.matrix.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt() * self.weight
    }

    /// `ψ ⊗ conj(η)`: the rank-one operator `f ↦ <f, η> ψ`.
    pub fn rank_one(line: &Grid, psi: &[Complex64], eta: &[Complex64]) -> Result<Self> {
        let n = line.points_per_axis();
        if psi.len() != n || eta.len() != n {
            return Err(Error::GridMismatch);
        }
        let mut m = Vec::with_capacity(n * n);
        for p in psi {
            for e in eta {
                m.push(p * e.conj());
            }
        }
        Ok(Self { n, weight: line.spacing(), matrix: m })
    }
}

/// Pedersen calculus on matching grids: a line grid for `L^2(R)` and a plane grid
/// for symbols, whose measure is the normalization constant `ρ`.
#[derive(Debug, Clone)]
pub struct PedersenCalculus {
    line: Grid,
    plane: Grid,
    // E[m][s] = e^{i h^2 (m - N/2)(s - N)/2} for s = k + l.
    phases: Vec<Complex64>,
}

impl PedersenCalculus {
    /// Calculus with an explicit `ρ`.
    pub fn with_rho(half_width: f64, n: usize, rho: f64) -> Result<Self> {
        let line = Grid::new(1, half_width, n)?;
        let plane = Grid::new(2, half_width, n)?.with_measure(rho);
        let h = line.spacing();
        let mut phases = Vec::with_capacity(n * 2 * n);
        for m in 0..n {
            for s in 0..2 * n {
                let ph = h * h * (m as f64 - (n / 2) as f64) * (s as f64 - n as f64) / 2.0;
                phases.push(Complex64::from_polar(1.0, ph));
            }
        }
        Ok(Self { line, plane, phases })
    }

    /// Chooses `ρ` so that `Tr T(b) = b(0)` for the standard Gaussian `e^{-(q²+p²)/2}`.
    pub fn calibrate(half_width: f64, n: usize) -> Result<Self> {
        let raw = Self::with_rho(half_width, n, 1.0)?;
        let b = symbols::gaussian(raw.plane, 1.0);
        let t = raw.transform(&b)?.trace();
        Self::with_rho(half_width, n, 1.0 / t.re)
    }

    pub fn rho(&self) -> f64 {
        self.plane.measure()
    }

    pub fn line(&self) -> &Grid {
        &self.line
    }

    pub fn plane(&self) -> &Grid {
        &self.plane
    }

    /// `T(b) = ρ ∫ b(X) π(exp X) dX` as a kernel matrix.
    pub fn transform(&self, b: &SampledSymbol) -> Result<DiscretizedOperator> {
        if b.grid().d() != 2 {
            return Err(Error::DimensionNot2(b.grid().d()));
        }
        b.grid().check(&self.plane)?;
        let n = self.line.points_per_axis();
        let h = self.line.spacing();
        let c = self.rho() * h;
        let half = n / 2;
        let vals = b.values();
        let rows = crate::par::map_range(n, |k| {
            let mut row = vec![Complex64::new(0.0, 0.0); n];
            for (l, slot) in row.iter_mut().enumerate() {
                let j = l as i64 - k as i64 + half as i64;
                if !(0..n as i64).contains(&j) {
                    continue;
                }
                let j = j as usize;
                let s = k + l;
                let mut acc = Complex64::new(0.0, 0.0);
                for m in 0..n {
                    acc += vals[m * n + j] * self.phases[m * 2 * n + s];
                }
                *slot = acc * c;
            }
            row
        });
        Ok(DiscretizedOperator { n, weight: h, matrix: rows.into_iter().flatten().collect() })
    }

    /// `b(X) = Tr(π(exp X)^{-1} B)` at every plane node.
    pub fn inverse(&self, op: &DiscretizedOperator) -> Result<SampledSymbol> {
        let n = self.line.points_per_axis();
        let h = self.line.spacing();
        if op.size() != n || op.weight() != h {
            return Err(Error::GridMismatch);
        }
        let half = n as i64 / 2;
        let values = crate::par::map_range(n * n, |idx| {
            let (m, j) = (idx / n, idx % n);
            let q = self.line.node(m);
            let shift = j as i64 - half;
            let p = h * shift as f64;
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..n as i64 {
                let r = k - shift;
                if !(0..n as i64).contains(&r) {
                    continue;
                }
                let x = self.line.node(k as usize);
                acc += Complex64::from_polar(1.0, -q * x + q * p / 2.0) * op.kernel(r as usize, k as usize);
            }
            acc * h
        });
        SampledSymbol::from_values(self.plane, values)
    }

    /// `π(exp(q X_2 + p X_3)) f` with `p` a lattice multiple of the spacing; zero outside the box.
    pub fn pi_apply(&self, qp: [f64; 2], f: &[Complex64]) -> Result<Vec<Complex64>> {
        let n = self.line.points_per_axis();
        let h = self.line.spacing();
        let s = (qp[1] / h).round();
        if (qp[1] / h - s).abs() > 1e-9 {
            return Err(Error::InvalidGrid(format!("shift {} is not a lattice multiple of {h}", qp[1])));
        }
        let s = s as i64;
        Ok((0..n)
            .map(|k| {
                let src = k as i64 + s;
                if !(0..n as i64).contains(&src) {
                    return Complex64::new(0.0, 0.0);
                }
                let x = self.line.node(k);
                Complex64::from_polar(1.0, qp[0] * x + qp[0] * qp[1] / 2.0) * f[src as usize]
            })
            .collect())
    }

    pub fn line_norm(&self, f: &[Complex64]) -> f64 {
        (f.iter().map(|v| v.norm_sqr()).sum::<f64>() * self.line.spacing()).sqrt()
    }
}

/// Max over test vectors of `‖π(u)π(v)f - e^{iα(u,v)} π(u·v) f‖ / ‖f‖`.
pub fn ccr_phase_check(
    calc: &PedersenCalculus,
    group: &PredualGroup,
    u: [f64; 2],
    v: [f64; 2],
    tests: &[Vec<Complex64>],
) -> Result<f64> {
    let uv = group.product(&u, &v);
    let phase = group.gamma(&u, &v);
    let mut worst: f64 = 0.0;
    for f in tests {
        let lhs = calc.pi_apply(u, &calc.pi_apply(v, f)?)?;
        let rhs = calc.pi_apply([uv[0], uv[1]], f)?;
        let diff: Vec<Complex64> = lhs.iter().zip(&rhs).map(|(a, b)| a - phase * b).collect();
        worst = worst.max(calc.line_norm(&diff) / calc.line_norm(f));
    }
    Ok(worst)
}

/// Gaussians `π^{-1/4} e^{-(x-c)^2/2}` on the line grid.
pub fn line_gaussian(line: &Grid, c: f64) -> Vec<Complex64> {
    let norm = std::f64::consts::PI.powf(-0.25);
    (0..line.points_per_axis())
        .map(|k| {
            let x = line.node(k) - c;
            Complex64::new(norm * (-x * x / 2.0).exp(), 0.0)
        })
        .collect()
}

/// Residuals of the operator identities for one symbol pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PedersenResiduals {
    /// `‖T(b̌) - T(b)^*‖_HS`.
    pub adjoint: f64,
    /// `‖T(a *_e b) - T(a)T(b)‖_HS / (‖a‖ ‖b‖)`.
    pub homomorphism: f64,
    /// `|Tr T(b) - b(0)| / (1 + |b(0)|)`.
    pub trace: f64,
    /// `|‖T(b)‖_HS - ‖b‖| / ‖b‖`.
    pub isometry: f64,
}

/// Evaluates adjoint, homomorphism, trace and isometry residuals for `(a, b)`.
pub fn verify_pedersen_identities(
    calc: &PedersenCalculus,
    group: &PredualGroup,
    a: &SampledSymbol,
    b: &SampledSymbol,
) -> Result<PedersenResiduals> {
    let ta = calc.transform(a)?;
    let tb = calc.transform(b)?;
    let adjoint = calc.transform(&b.check_involution())?.sub(&tb.adjoint())?.hs_norm();
    let homomorphism = homomorphism_residual(calc, group, a, b, &ta, &tb)?;
    let b0 = b.at(b.grid().origin());
    let trace = (tb.trace() - b0).norm() / (1.0 + b0.norm());
    let nb = b.l2_norm();
    let isometry = if nb == 0.0 { tb.hs_norm() } else { (tb.hs_norm() - nb).abs() / nb };
    Ok(PedersenResiduals { adjoint, homomorphism, trace, isometry })
}

/// `‖T(a *_e b) - T(a)T(b)‖_HS / (‖a‖ ‖b‖)`, zero when either factor vanishes.
pub fn homomorphism_residual(
    calc: &PedersenCalculus,
    group: &PredualGroup,
    a: &SampledSymbol,
    b: &SampledSymbol,
    ta: &DiscretizedOperator,
    tb: &DiscretizedOperator,
) -> Result<f64> {
    let conv = twisted_convolve(group, a, b)?;
    let r = calc.transform(&conv)?.sub(&ta.compose(tb)?)?.hs_norm();
    let scale = a.l2_norm() * b.l2_norm();
    Ok(if scale == 0.0 { r } else { r / scale })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn calibration_recovers_two_pi() {
        let c = PedersenCalculus::calibrate(8.0, 64).unwrap();
        assert!((c.rho() * 2.0 * std::f64::consts::PI - 1.0).abs() < 1e-10);
    }

    #[test]
    fn zero_symbol_gives_zero_operator() {
        let c = PedersenCalculus::calibrate(8.0, 32).unwrap();
        let t = c.transform(&SampledSymbol::zeros(*c.plane())).unwrap();
        assert_eq!(t.hs_norm(), 0.0);
        assert_eq!(c.inverse(&t).unwrap().max_abs(), 0.0);
    }

    #[test]
    fn rejects_wrong_dimension() {
        let c = PedersenCalculus::calibrate(8.0, 32).unwrap();
        let g = Grid::new(1, 8.0, 32).unwrap();
        assert!(matches!(c.transform(&SampledSymbol::zeros(g)), Err(Error::DimensionNot2(1))));
    }

    #[test]
    fn rank_one_symbol_matches_closed_form() {
        let calc = PedersenCalculus::calibrate(8.0, 128).unwrap();
        let c = 0.75;
        let eta = line_gaussian(calc.line(), c);
        let op = DiscretizedOperator::rank_one(calc.line(), &eta, &eta).unwrap();
        let b = calc.inverse(&op).unwrap();
        // Direct quadrature: b(q,p) = e^{-iqc} e^{-(q^2+p^2)/4}.
        let exact = SampledSymbol::from_fn(*calc.plane(), move |x| {
            Complex64::from_polar((-(x[0] * x[0] + x[1] * x[1]) / 4.0).exp(), -x[0] * c)
        });
        let err = b.sub(&exact).unwrap().l2_norm() / exact.l2_norm();
        assert!(err < 1e-3, "{err}");
        let back = calc.transform(&exact).unwrap();
        assert!(back.sub(&op).unwrap().hs_norm() / op.hs_norm() < 1e-3);
    }
}

//! Homogeneous pseudo-distances on the predual group.

use rand::Rng;

use crate::error::{Error, Result};
use crate::twist::PredualGroup;

/// `m(x) = max_j |x_j|^{1/w_j}` with measured quasi-triangle and doubling constants.
#[derive(Debug, Clone)]
pub struct PseudoDistance {
    group: PredualGroup,
    weights: Vec<u32>,
    c_m: f64,
    doubling: f64,
}

/// Result of sampling the quasi-triangle ratio at several radii.
#[derive(Debug, Clone, PartialEq)]
pub struct Calibration {
    /// `(radius, max m(xy) / max(m(x), m(y)))` per sampled radius.
    pub ratios: Vec<(f64, f64)>,
    pub c_m: f64,
    pub doubling: f64,
}

/// Radii at which the quasi-triangle ratio is sampled.
pub const CALIBRATION_RADII: [f64; 4] = [1.0, 2.0, 4.0, 8.0];

impl PseudoDistance {
    /// Weights from the group; constants start at the values exact for an additive law.
    pub fn default_for(group: &PredualGroup) -> Self {
        let weights = group.weights().to_vec();
        let total: u32 = weights.iter().sum();
        Self { group: group.clone(), weights, c_m: 2.0, doubling: 2f64.powi(total as i32) }
    }

    pub fn group(&self) -> &PredualGroup {
        &self.group
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn c_m(&self) -> f64 {
        self.c_m
    }

    pub fn doubling(&self) -> f64 {
        self.doubling
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        x.iter().zip(&self.weights).map(|(v, &w)| v.abs().powf(1.0 / w as f64)).fold(0.0, f64::max)
    }

    /// `m(x y^{-1})`.
    pub fn distance(&self, x: &[f64], y: &[f64]) -> f64 {
        let ny: Vec<f64> = y.iter().map(|v| -v).collect();
        self.eval(&self.group.product(x, &ny))
    }

    /// Half-widths of the ball `{m < r}` along each axis.
    pub fn box_half_widths(&self, r: f64) -> Vec<f64> {
        self.weights.iter().map(|&w| r.powi(w as i32)).collect()
    }

    /// Samples pairs uniformly in `{m ≤ r}` for each calibration radius. The
    /// ball volume scales as `r^{Σw}` exactly, so the doubling constant is `2^{Σw}`.
    pub fn calibrate<R: Rng + ?Sized>(&mut self, rng: &mut R, samples: usize) -> Result<Calibration> {
        let mut ratios = Vec::new();
        for &r in &CALIBRATION_RADII {
            let hw = self.box_half_widths(r);
            let mut worst: f64 = 0.0;
            for _ in 0..samples {
                let x: Vec<f64> = hw.iter().map(|&a| rng.random_range(-a..=a)).collect();
                let y: Vec<f64> = hw.iter().map(|&a| rng.random_range(-a..=a)).collect();
                let denom = self.eval(&x).max(self.eval(&y));
                if denom > 0.0 {
                    worst = worst.max(self.eval(&self.group.product(&x, &y)) / denom);
                }
            }
            ratios.push((r, worst));
        }
        let first = ratios[0].1;
        let last = ratios[ratios.len() - 1].1;
        if !last.is_finite() || last > 2.0 * first {
            return Err(Error::CalibrationDiverged { first, last });
        }
        let c_m = ratios.iter().map(|p| p.1).fold(1.0, f64::max);
        let total: u32 = self.weights.iter().sum();
        self.c_m = c_m;
        self.doubling = 2f64.powi(total as i32);
        Ok(Calibration { ratios, c_m, doubling: self.doubling })
    }
}

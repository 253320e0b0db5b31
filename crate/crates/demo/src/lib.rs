//! Browser bindings: a twisted-convolution field, a CZ covering and the Pedersen
//! identity residuals, all on the Heisenberg predual.

use nilharm::cz::{cz_cover, PseudoDistance};
use nilharm::orbit::OrbitData;
use nilharm::rational::unit_vec;
use nilharm::seed::Streams;
use nilharm::twist::{symbols, twisted_convolve, verify_pedersen_identities, Grid, PedersenCalculus, PredualGroup};
use nilharm::{catalog, Error};
use serde_json::json;
use wasm_bindgen::prelude::*;

fn h3_group() -> Result<PredualGroup, Error> {
    PredualGroup::from_orbit(&OrbitData::new(&catalog::h3(), &unit_vec(3, 0))?)
}

fn msg(e: Error) -> String {
    e.to_string()
}

/// `|a *_e b|` on an `n × n` grid of half-width `half_width`, row-major in `(q, p)`.
/// `a` is a first-order Hermite-Gaussian at the origin, `b` a Gaussian at `(q, p)`.
/// With `twisted = false` the plain convolution is returned for comparison.
#[wasm_bindgen]
pub fn convolution_field(n: usize, half_width: f64, q: f64, p: f64, twisted: bool) -> Result<Vec<f64>, String> {
    let grid = Grid::new(2, half_width, n).map_err(msg)?;
    let group = if twisted { h3_group().map_err(msg)? } else { PredualGroup::abelian(2) };
    let a = symbols::hermite_gaussian(grid, 1, 0, [0.0, 0.0], 0.8);
    let b = symbols::hermite_gaussian(grid, 0, 0, [q, p], 0.6);
    let c = twisted_convolve(&group, &a, &b).map_err(msg)?;
    Ok(c.values().iter().map(|v| v.norm()).collect())
}

/// Two Gaussian bumps used as the CZ input.
fn bumps(grid: &Grid) -> Vec<f64> {
    (0..grid.len())
        .map(|i| {
            let x = grid.point(i);
            let g = |c: [f64; 2], s: f64| (-((x[0] - c[0]).powi(2) + (x[1] - c[1]).powi(2)) / (2.0 * s * s)).exp();
            6.0 * g([1.5, -1.0], 0.3) + 2.0 * g([-2.0, 1.0], 0.6)
        })
        .collect()
}

/// Covering of `{f > level · max f}` for the two-bump input, as JSON:
/// the input values, each ball's centre, radius and box half-widths, and the measured constants.
#[wasm_bindgen]
pub fn cz_covering(n: usize, level: f64) -> Result<String, String> {
    if !(level > 0.0 && level < 1.0) {
        return Err(format!("level must lie in (0, 1), got {level}"));
    }
    let grid = Grid::new(2, 4.0, n).map_err(msg)?;
    let group = h3_group().map_err(msg)?;
    let mut m = PseudoDistance::default_for(&group);
    m.calibrate(&mut Streams::new(0).stream("demo/calibration"), 1000).map_err(msg)?;
    let f = bumps(&grid);
    let alpha = level * f.iter().cloned().fold(0.0, f64::max);
    let cover = cz_cover(&f, alpha, &m, &grid).map_err(msg)?;
    let balls: Vec<_> = cover
        .balls
        .iter()
        .map(|b| json!({ "center": grid.point(b.center), "radius": b.radius, "half_widths": m.box_half_widths(b.radius) }))
        .collect();
    Ok(json!({
        "n": n,
        "half_width": grid.half_width(),
        "alpha": alpha,
        "f": f,
        "balls": balls,
        "c_m": m.c_m(),
        "c_prime": cover.c_prime,
        "overlap": cover.overlap,
        "covers_level_set": cover.covers_level_set,
    })
    .to_string())
}

/// Pedersen identity residuals for a pair of Hermite-Gaussians, as JSON.
#[wasm_bindgen]
pub fn pedersen_residuals(n: usize) -> Result<String, String> {
    let calc = PedersenCalculus::calibrate(8.0, n).map_err(msg)?;
    let plane = *calc.plane();
    let a = symbols::hermite_gaussian(plane, 1, 0, [0.5, 0.0], 1.0);
    let b = symbols::hermite_gaussian(plane, 0, 1, [0.0, -0.5], 1.2);
    let r = verify_pedersen_identities(&calc, &h3_group().map_err(msg)?, &a, &b).map_err(msg)?;
    Ok(json!({
        "rho": calc.rho(),
        "adjoint": r.adjoint,
        "homomorphism": r.homomorphism,
        "trace": r.trace,
        "isometry": r.isometry,
    })
    .to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twisting_changes_the_field() {
        let t = convolution_field(32, 4.0, 1.0, 0.5, true).unwrap();
        let u = convolution_field(32, 4.0, 1.0, 0.5, false).unwrap();
        assert_eq!(t.len(), 32 * 32);
        let diff = t.iter().zip(&u).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        assert!(diff > 1e-3, "{diff}");
    }

    #[test]
    fn covering_covers_level_set() {
        let v: serde_json::Value = serde_json::from_str(&cz_covering(64, 0.3).unwrap()).unwrap();
        assert_eq!(v["covers_level_set"], true);
        assert!(!v["balls"].as_array().unwrap().is_empty());
    }

    #[test]
    fn residuals_are_small() {
        let v: serde_json::Value = serde_json::from_str(&pedersen_residuals(64).unwrap()).unwrap();
        assert!(v["homomorphism"].as_f64().unwrap() < 1e-3, "{v}");
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(convolution_field(30, 4.0, 0.0, 0.0, true).is_err());
        assert!(cz_covering(64, 1.5).is_err());
    }
}

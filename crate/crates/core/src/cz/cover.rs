//! Discrete covering of the level set `{f > α}` by pseudo-distance balls.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::twist::Grid;

use super::pseudo::PseudoDistance;

/// On-grid ball `{x : m(x (-z)) < r}` with its sorted member indices.
#[derive(Debug, Clone, PartialEq)]
pub struct Ball {
    pub center: usize,
    pub radius: f64,
    pub members: Vec<usize>,
}

impl Ball {
    /// Node count times cell volume.
    pub fn volume(&self, grid: &Grid) -> f64 {
        self.members.len() as f64 * grid.cell_volume()
    }

    pub fn contains(&self, idx: usize) -> bool {
        self.members.binary_search(&idx).is_ok()
    }
}

/// Balls covering `{f > α}` and the constants measured on them.
#[derive(Debug, Clone)]
pub struct Covering {
    pub alpha: f64,
    pub balls: Vec<Ball>,
    /// Balls added after the Vitali pass to reach uncovered nodes with `f > α`.
    pub repaired: usize,
    /// Radius multiplier applied to the selected cores.
    pub enlargement: f64,
    /// `max(max_i avg_{B_i} f / α, α Σ|B_i| / ∫f)`.
    pub c_prime: f64,
    /// `min_i avg_{B_i} f / α`.
    pub min_average_ratio: f64,
    /// Maximal covering multiplicity.
    pub overlap: usize,
    /// Every node with `f > α` lies in some ball.
    pub covers_level_set: bool,
}

/// Ball membership on a grid; boxes for additive laws, scans otherwise.
pub struct BallGeometry<'a> {
    m: &'a PseudoDistance,
    grid: Grid,
}

impl<'a> BallGeometry<'a> {
    pub fn new(m: &'a PseudoDistance, grid: Grid) -> Result<Self> {
        if m.group().d() != grid.d() {
            return Err(Error::DimensionMismatch { expected: m.group().d(), got: grid.d() });
        }
        Ok(Self { m, grid })
    }

    /// Dyadic radii, starting at one node and ending once a ball spans the grid.
    pub fn radii(&self) -> Vec<f64> {
        let h = self.grid.spacing();
        let w = self.m.weights();
        let r0 = w.iter().map(|&wj| (h / 2.0).powf(1.0 / wj as f64)).fold(f64::INFINITY, f64::min);
        let span = 4.0 * self.grid.half_width();
        let mut out = vec![r0];
        while out.len() < 64 {
            let r = *out.last().unwrap();
            if w.iter().all(|&wj| r.powi(wj as i32) >= span) {
                break;
            }
            out.push(2.0 * r);
        }
        out
    }

    fn extents(&self, r: f64) -> Vec<i64> {
        let h = self.grid.spacing();
        self.m
            .weights()
            .iter()
            .map(|&w| ((r.powi(w as i32) / h) * (1.0 - 1e-12)).floor().max(0.0) as i64)
            .collect()
    }

    fn clipped_box(&self, center: usize, r: f64) -> Vec<(usize, usize)> {
        let n = self.grid.points_per_axis() as i64;
        self.grid
            .unravel(center)
            .iter()
            .zip(self.extents(r))
            .map(|(&c, e)| ((c as i64 - e).max(0) as usize, (c as i64 + e).min(n - 1) as usize))
            .collect()
    }

    pub fn members(&self, center: usize, r: f64) -> Vec<usize> {
        if self.m.group().is_additive() {
            let bounds = self.clipped_box(center, r);
            let mut out = Vec::new();
            let mut ks: Vec<usize> = bounds.iter().map(|b| b.0).collect();
            loop {
                out.push(self.grid.ravel(&ks));
                let mut a = ks.len();
                loop {
                    if a == 0 {
                        return out;
                    }
                    a -= 1;
                    if ks[a] < bounds[a].1 {
                        ks[a] += 1;
                        break;
                    }
                    ks[a] = bounds[a].0;
                }
            }
        } else {
            let z = self.grid.point(center);
            (0..self.grid.len()).filter(|&i| self.m.distance(&self.grid.point(i), &z) < r).collect()
        }
    }

    /// Averages of `f` over `B(x, r_k)` for every node and radius.
    fn averages(&self, f: &[f64], radii: &[f64]) -> Vec<Vec<f64>> {
        if self.m.group().is_additive() {
            let table = PrefixSums::new(&self.grid, f);
            crate::par::map_range(self.grid.len(), |i| {
                radii
                    .iter()
                    .map(|&r| {
                        let b = self.clipped_box(i, r);
                        let count: usize = b.iter().map(|(lo, hi)| hi - lo + 1).product();
                        table.box_sum(&b) / count as f64
                    })
                    .collect()
            })
        } else {
            crate::par::map_range(self.grid.len(), |i| {
                radii
                    .iter()
                    .map(|&r| {
                        let mem = self.members(i, r);
                        mem.iter().map(|&j| f[j]).sum::<f64>() / mem.len() as f64
                    })
                    .collect()
            })
        }
    }
}

/// Summed-area table over `(N+1)^d` corners.
struct PrefixSums {
    n1: usize,
    d: usize,
    s: Vec<f64>,
}

impl PrefixSums {
    fn new(grid: &Grid, f: &[f64]) -> Self {
        let n = grid.points_per_axis();
        let d = grid.d();
        let n1 = n + 1;
        let mut s = vec![0.0; n1.pow(d as u32)];
        for (i, &v) in f.iter().enumerate() {
            let ks = grid.unravel(i);
            s[ks.iter().fold(0, |acc, &k| acc * n1 + k + 1)] = v;
        }
        let mut stride = 1;
        for _ in 0..d {
            for idx in 0..s.len() {
                if (idx / stride) % n1 != 0 {
                    s[idx] += s[idx - stride];
                }
            }
            stride *= n1;
        }
        Self { n1, d, s }
    }

    /// Sum over the inclusive index box.
    fn box_sum(&self, b: &[(usize, usize)]) -> f64 {
        let mut total = 0.0;
        for mask in 0..(1usize << self.d) {
            let mut idx = 0;
            let mut sign = 1.0;
            for (a, &(lo, hi)) in b.iter().enumerate() {
                let k = if mask >> a & 1 == 1 {
                    sign = -sign;
                    lo
                } else {
                    hi + 1
                };
                idx = idx * self.n1 + k;
            }
            total += sign * self.s[idx];
        }
        total
    }
}

/// Covers `{f > α}` for `f ≥ 0` sampled on `grid`.
///
/// Candidates are the nodes whose maximal average exceeds `α`, scanned by
/// decreasing maximal value (ties by index). A candidate is kept when its core
/// ball `B(x, r(x))`, `r(x)` the largest dyadic radius with average above `α`,
/// misses all earlier cores; kept cores are enlarged by the smallest power of two
/// at least `C_m^2`. Nodes with `f > α` still uncovered receive their own core.
pub fn cz_cover(f: &[f64], alpha: f64, m: &PseudoDistance, grid: &Grid) -> Result<Covering> {
    if alpha.is_nan() || alpha <= 0.0 {
        return Err(Error::AlphaNonPositive(alpha));
    }
    if f.len() != grid.len() {
        return Err(Error::DimensionMismatch { expected: grid.len(), got: f.len() });
    }
    let geo = BallGeometry::new(m, *grid)?;
    let radii = geo.radii();
    let kappa = 2f64.powi((m.c_m() * m.c_m()).log2().ceil().max(0.0) as i32);

    let avgs = geo.averages(f, &radii);
    let mut candidates: Vec<(usize, f64, usize)> = avgs
        .iter()
        .enumerate()
        .filter_map(|(i, a)| {
            let top = a.iter().rposition(|&v| v > alpha)?;
            Some((i, a.iter().cloned().fold(0.0, f64::max), top))
        })
        .collect();
    candidates.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap_or(Ordering::Equal).then(a.0.cmp(&b.0)));

    let mut in_core = vec![false; grid.len()];
    let mut balls = Vec::new();
    for &(i, _, k) in &candidates {
        let core = geo.members(i, radii[k]);
        if core.iter().any(|&j| in_core[j]) {
            continue;
        }
        core.iter().for_each(|&j| in_core[j] = true);
        let r = kappa * radii[k];
        balls.push(Ball { center: i, radius: r, members: geo.members(i, r) });
    }

    let mut multiplicity = vec![0usize; grid.len()];
    for b in &balls {
        b.members.iter().for_each(|&j| multiplicity[j] += 1);
    }
    let mut repaired = 0;
    for &(i, _, k) in &candidates {
        if f[i] > alpha && multiplicity[i] == 0 {
            let mem = geo.members(i, radii[k]);
            mem.iter().for_each(|&j| multiplicity[j] += 1);
            balls.push(Ball { center: i, radius: radii[k], members: mem });
            repaired += 1;
        }
    }

    let vol = grid.cell_volume();
    let mass: f64 = f.iter().sum::<f64>() * vol;
    let mut c_prime: f64 = 0.0;
    let mut min_ratio = f64::INFINITY;
    let mut total_vol = 0.0;
    for b in &balls {
        let avg = b.members.iter().map(|&j| f[j]).sum::<f64>() / b.members.len() as f64;
        c_prime = c_prime.max(avg / alpha);
        min_ratio = min_ratio.min(avg / alpha);
        total_vol += b.volume(grid);
    }
    if mass > 0.0 {
        c_prime = c_prime.max(alpha * total_vol / mass);
    }
    let covers_level_set = f.iter().zip(&multiplicity).all(|(&v, &c)| v <= alpha || c > 0);
    Ok(Covering {
        alpha,
        balls,
        repaired,
        enlargement: kappa,
        c_prime,
        min_average_ratio: if min_ratio.is_finite() { min_ratio } else { 0.0 },
        overlap: multiplicity.into_iter().max().unwrap_or(0),
        covers_level_set,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::orbit::OrbitData;
    use crate::rational::unit_vec;
    use crate::twist::PredualGroup;

    fn h3_metric() -> PseudoDistance {
        let o = OrbitData::new(&catalog::h3(), &unit_vec(3, 0)).unwrap();
        PseudoDistance::default_for(&PredualGroup::from_orbit(&o).unwrap())
    }

    fn bump(grid: &Grid, c: [f64; 2], r: f64, height: f64) -> Vec<f64> {
        (0..grid.len())
            .map(|i| {
                let x = grid.point(i);
                let d2 = (x[0] - c[0]).powi(2) + (x[1] - c[1]).powi(2);
                if d2 < r * r { height * (1.0 - d2 / (r * r)) } else { 0.0 }
            })
            .collect()
    }

    #[test]
    fn prefix_sums_match_direct_box_sums() {
        let grid = Grid::new(2, 2.0, 8).unwrap();
        let f: Vec<f64> = (0..64).map(|i| (i * 7 % 11) as f64).collect();
        let t = PrefixSums::new(&grid, &f);
        let b = [(1usize, 4usize), (2usize, 6usize)];
        let direct: f64 = (1..=4).flat_map(|a| (2..=6).map(move |c| (a, c))).map(|(a, c)| f[a * 8 + c]).sum();
        assert_eq!(t.box_sum(&b), direct);
    }

    #[test]
    fn box_members_match_metric_scan() {
        let m = h3_metric();
        let grid = Grid::new(2, 2.0, 16).unwrap();
        let geo = BallGeometry::new(&m, grid).unwrap();
        let c = grid.ravel(&[3, 9]);
        for r in geo.radii() {
            let z = grid.point(c);
            let scan: Vec<usize> =
                (0..grid.len()).filter(|&i| m.distance(&grid.point(i), &z) < r).collect();
            assert_eq!(geo.members(c, r), scan, "radius {r}");
        }
    }

    #[test]
    fn below_level_gives_empty_cover() {
        let grid = Grid::new(2, 4.0, 32).unwrap();
        let f = bump(&grid, [0.0, 0.0], 1.0, 1.0);
        let cov = cz_cover(&f, 1.0, &h3_metric(), &grid).unwrap();
        assert!(cov.balls.is_empty());
        assert!(cov.covers_level_set);
        assert!(matches!(cz_cover(&f, 0.0, &h3_metric(), &grid), Err(Error::AlphaNonPositive(_))));
    }

    #[test]
    fn single_bump_gives_one_ball() {
        let grid = Grid::new(2, 4.0, 32).unwrap();
        let f = bump(&grid, [0.5, -0.25], 0.8, 10.0);
        let support: Vec<usize> = (0..f.len()).filter(|&i| f[i] > 0.0).collect();
        let mean = support.iter().map(|&i| f[i]).sum::<f64>() / support.len() as f64;
        let cov = cz_cover(&f, mean / 2.0, &h3_metric(), &grid).unwrap();
        assert_eq!(cov.balls.len(), 1);
        assert!(support.iter().all(|&i| cov.balls[0].contains(i)));
        let mass: f64 = f.iter().sum::<f64>() * grid.cell_volume();
        let total: f64 = cov.balls.iter().map(|b| b.volume(&grid)).sum();
        assert!(total <= cov.c_prime / cov.alpha * mass * (1.0 + 1e-12));
    }
}

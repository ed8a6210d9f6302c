//! Periodic fluid-domain and strip geometry: surface profiles,
//! terrain-following grids over the fluid domain, uniform grids over the
//! strip, and interior regions with their mollification headroom.
//!
//! All objects are immutable after construction and safe to share across
//! workers.

use crate::error::{Error, Result};
use crate::numerics::diff::{centered4_periodic, spectral_derivative};
use crate::numerics::field::Field2;
use crate::numerics::interp::{cubic_interp_periodic, Bicubic};
use serde::{Deserialize, Serialize};

/// Free-surface profile `y = eta(x)` over one period, sampled at the
/// uniform nodes `x_i = i * period / n` (endpoint excluded, so periodic
/// closure holds by construction).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SurfaceProfile {
    pub period: f64,
    pub eta: Vec<f64>,
    pub eta_prime: Vec<f64>,
}

/// Builds a surface profile from samples of `eta` over one period.
///
/// The slope values are computed spectrally, which is exact for
/// band-limited profiles and 4th-order-plus for smooth ones.
pub fn build_surface(period: f64, samples: &[f64]) -> Result<SurfaceProfile> {
    if period <= 0.0 {
        return Err(Error::invalid(format!("period must be positive, got {period}")));
    }
    if samples.len() < 8 {
        return Err(Error::invalid(format!(
            "need at least 8 surface samples, got {}",
            samples.len()
        )));
    }
    for (i, &v) in samples.iter().enumerate() {
        if !(v > 0.0) {
            return Err(Error::invalid(format!(
                "surface sample {i} is {v}; eta must be positive everywhere"
            )));
        }
    }
    let eta_prime = spectral_derivative(samples, period);
    Ok(SurfaceProfile {
        period,
        eta: samples.to_vec(),
        eta_prime,
    })
}

impl SurfaceProfile {
    pub fn nx(&self) -> usize {
        self.eta.len()
    }

    pub fn x_node(&self, i: usize) -> f64 {
        i as f64 * self.period / self.nx() as f64
    }

    /// Interpolated surface height at arbitrary `x` (periodic).
    pub fn eta_at(&self, x: f64) -> f64 {
        cubic_interp_periodic(&self.eta, self.period, x)
    }

    pub fn eta_prime_at(&self, x: f64) -> f64 {
        cubic_interp_periodic(&self.eta_prime, self.period, x)
    }

    pub fn min_eta(&self) -> f64 {
        self.eta.iter().fold(f64::INFINITY, |m, &v| m.min(v))
    }

    /// Worst mismatch between the stored slopes and 4th-order centered
    /// differences of the stored heights; the derivative-consistency
    /// invariant compares this against a grid-scaled tolerance.
    pub fn derivative_consistency(&self) -> f64 {
        let fd = centered4_periodic(&self.eta, self.period);
        fd.iter()
            .zip(&self.eta_prime)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Terrain-following grid over the fluid domain `0 < y < eta(x)`:
/// nodes sit at `(x_i, sigma_j * eta(x_i))` so fields are storable on a
/// rectangular index space with no cut cells at the free surface.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FluidGrid {
    pub surface: SurfaceProfile,
    /// Strictly increasing levels with `sigma[0] = 0`, `sigma[ny-1] = 1`.
    pub sigma: Vec<f64>,
}

impl FluidGrid {
    pub fn new(surface: SurfaceProfile, sigma: Vec<f64>) -> Result<Self> {
        if sigma.len() < 5 {
            return Err(Error::invalid("need at least 5 sigma levels"));
        }
        if sigma[0] != 0.0 || *sigma.last().unwrap() != 1.0 {
            return Err(Error::invalid("sigma levels must span exactly [0, 1]"));
        }
        if sigma.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::invalid("sigma levels must be strictly increasing"));
        }
        Ok(FluidGrid { surface, sigma })
    }

    /// Uniform sigma levels, the default construction.
    pub fn uniform(surface: SurfaceProfile, ny: usize) -> Result<Self> {
        let sigma = (0..ny)
            .map(|j| j as f64 / (ny - 1) as f64)
            .collect::<Vec<_>>();
        // Force exact endpoints against rounding.
        let mut sigma = sigma;
        sigma[0] = 0.0;
        sigma[ny - 1] = 1.0;
        FluidGrid::new(surface, sigma)
    }

    pub fn nx(&self) -> usize {
        self.surface.nx()
    }

    pub fn ny(&self) -> usize {
        self.sigma.len()
    }

    pub fn period(&self) -> f64 {
        self.surface.period
    }

    pub fn x_node(&self, i: usize) -> f64 {
        self.surface.x_node(i)
    }

    pub fn y_node(&self, i: usize, j: usize) -> f64 {
        self.sigma[j] * self.surface.eta[i]
    }

    /// Physical y-positions of column `i`, bed to surface.
    pub fn column_y(&self, i: usize) -> Vec<f64> {
        let eta = self.surface.eta[i];
        self.sigma.iter().map(|&s| s * eta).collect()
    }

    /// Representative grid spacing used for default tolerances.
    pub fn spacing(&self) -> f64 {
        let dx = self.period() / self.nx() as f64;
        let dy = self.surface.min_eta() / (self.ny() - 1) as f64;
        dx.max(dy)
    }

    /// Bicubic interpolant of a nodal field over the physical domain.
    pub fn interp<'a>(&'a self, field: &Field2) -> FluidInterp<'a> {
        assert_eq!((field.nx, field.ny), (self.nx(), self.ny()));
        FluidInterp {
            grid: self,
            table: Bicubic::new(
                self.nx(),
                self.period(),
                self.sigma.clone(),
                field.values().to_vec(),
            ),
        }
    }
}

/// Interpolated view of a fluid-grid field; evaluation maps `(x, y)` to
/// the terrain-following chart `(x, y / eta(x))` first.
#[derive(Debug, Clone)]
pub struct FluidInterp<'a> {
    grid: &'a FluidGrid,
    table: Bicubic,
}

impl FluidInterp<'_> {
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        let eta = self.grid.surface.eta_at(x);
        self.table.eval(x, y / eta)
    }
}

/// Uniform grid over the strip `R = {(q, p): p0 < p < 0}`, periodic in q.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StripGrid {
    pub period: f64,
    pub p0: f64,
    pub nq: usize,
    /// Uniform nodes spanning exactly `[p0, 0]`, increasing.
    pub p_nodes: Vec<f64>,
}

impl StripGrid {
    pub fn new(period: f64, p0: f64, nq: usize, np: usize) -> Result<Self> {
        if period <= 0.0 {
            return Err(Error::invalid("period must be positive"));
        }
        if !(p0 < 0.0) {
            return Err(Error::invalid(format!("p0 must be negative, got {p0}")));
        }
        if nq < 8 || np < 5 {
            return Err(Error::invalid("strip grid needs nq >= 8 and np >= 5"));
        }
        let mut p_nodes: Vec<f64> = (0..np)
            .map(|j| p0 * (1.0 - j as f64 / (np - 1) as f64))
            .collect();
        p_nodes[0] = p0;
        p_nodes[np - 1] = 0.0;
        Ok(StripGrid {
            period,
            p0,
            nq,
            p_nodes,
        })
    }

    pub fn np(&self) -> usize {
        self.p_nodes.len()
    }

    pub fn q_node(&self, i: usize) -> f64 {
        i as f64 * self.period / self.nq as f64
    }

    pub fn spacing(&self) -> f64 {
        let dq = self.period / self.nq as f64;
        let dp = -self.p0 / (self.np() - 1) as f64;
        dq.max(dp)
    }

    pub fn interp(&self, field: &Field2) -> Bicubic {
        assert_eq!((field.nx, field.ny), (self.nq, self.np()));
        Bicubic::new(
            self.nq,
            self.period,
            self.p_nodes.clone(),
            field.values().to_vec(),
        )
    }
}

/// Which domain a region lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DomainKind {
    Fluid,
    Strip,
}

/// A compact rectangle `K` strictly inside an open domain `V`, together
/// with the enlarged set `K0 = {dist(., K) <= eps0}` and the admissible
/// mollification headroom `eps0 = dist(K, complement of V) / 2`.
///
/// Distances treat the horizontal direction periodically; the only
/// boundaries are the bed and the free surface (or the strip edges), so for
/// full-width bands the distance is purely vertical.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RegionSpec {
    pub domain: DomainKind,
    pub eps0: f64,
    /// Horizontal extent of K; `(0, period)` selects the full band.
    pub x_range: (f64, f64),
    /// Vertical extent of K (absolute y in the fluid, p in the strip).
    pub y_range: (f64, f64),
    pub nx: usize,
    pub ny: usize,
    /// Node mask of K over the parent grid, row-major like [`Field2`].
    pub k_mask: Vec<bool>,
    /// Node mask of K0 over the parent grid.
    pub k0_mask: Vec<bool>,
}

impl RegionSpec {
    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.k_mask[j * self.nx + i]
    }

    /// Indices of the K nodes in deterministic row-major order.
    pub fn k_nodes(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for j in 0..self.ny {
            for i in 0..self.nx {
                if self.k_mask[j * self.nx + i] {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

/// Horizontal distance from `x` to the periodic interval `[x0, x1]`.
fn periodic_interval_distance(x: f64, x0: f64, x1: f64, period: f64) -> f64 {
    if x1 - x0 >= period {
        return 0.0;
    }
    let w = (x - x0).rem_euclid(period);
    if w <= x1 - x0 {
        0.0
    } else {
        let beyond = w - (x1 - x0);
        beyond.min(period - w)
    }
}

/// Interior region of a fluid grid, selected by the rectangle
/// `[x0, x1] x [y0, y1]` in physical coordinates.
pub fn interior_region(grid: &FluidGrid, x_range: (f64, f64), y_range: (f64, f64)) -> Result<RegionSpec> {
    let (x0, x1) = x_range;
    let (y0, y1) = y_range;
    let period = grid.period();
    if !(x1 > x0) || x1 - x0 > period + 1e-12 {
        return Err(Error::invalid("x-range must be a nonempty span of at most one period"));
    }
    if !(y1 > y0) {
        return Err(Error::invalid("y-range must be nonempty"));
    }
    // Distance to the bed is purely vertical.
    let dist_bed = y0;
    // Distance from K to the free surface curve, sampled densely and
    // treating x periodically.
    let mut dist_surface = f64::INFINITY;
    let m = 4 * grid.nx();
    for s in 0..m {
        let xs = s as f64 * period / m as f64;
        let es = grid.surface.eta_at(xs);
        let dx = periodic_interval_distance(xs, x0, x1, period);
        let dy = es - y1;
        if dx == 0.0 && dy <= 0.0 {
            dist_surface = 0.0;
            break;
        }
        let d = if dy <= 0.0 { dx } else { (dx * dx + dy * dy).sqrt() };
        dist_surface = dist_surface.min(d);
    }
    let dist = dist_bed.min(dist_surface);
    if !(dist > 0.0) {
        return Err(Error::invalid(format!(
            "K touches the domain boundary (distance {dist}); eps0 would be 0"
        )));
    }
    let eps0 = dist / 2.0;
    let (nx, ny) = (grid.nx(), grid.ny());
    let mut k_mask = vec![false; nx * ny];
    let mut k0_mask = vec![false; nx * ny];
    for j in 0..ny {
        for i in 0..nx {
            let x = grid.x_node(i);
            let y = grid.y_node(i, j);
            let dx = periodic_interval_distance(x, x0, x1, period);
            let dy = if y < y0 {
                y0 - y
            } else if y > y1 {
                y - y1
            } else {
                0.0
            };
            let d = (dx * dx + dy * dy).sqrt();
            if d == 0.0 {
                k_mask[j * nx + i] = true;
            }
            if d <= eps0 {
                k0_mask[j * nx + i] = true;
            }
        }
    }
    if !k_mask.iter().any(|&b| b) {
        return Err(Error::invalid("selected K contains no grid nodes"));
    }
    Ok(RegionSpec {
        domain: DomainKind::Fluid,
        eps0,
        x_range,
        y_range,
        nx,
        ny,
        k_mask,
        k0_mask,
    })
}

/// Interior region of a strip grid, rectangle `[q0, q1] x [pa, pb]`.
pub fn interior_region_strip(
    grid: &StripGrid,
    q_range: (f64, f64),
    p_range: (f64, f64),
) -> Result<RegionSpec> {
    let (q0, q1) = q_range;
    let (pa, pb) = p_range;
    if !(q1 > q0) || q1 - q0 > grid.period + 1e-12 {
        return Err(Error::invalid("q-range must be a nonempty span of at most one period"));
    }
    if !(pb > pa) {
        return Err(Error::invalid("p-range must be nonempty"));
    }
    let dist = (pa - grid.p0).min(-pb);
    if !(dist > 0.0) {
        return Err(Error::invalid(format!(
            "K touches the strip boundary (distance {dist}); eps0 would be 0"
        )));
    }
    let eps0 = dist / 2.0;
    let (nx, ny) = (grid.nq, grid.np());
    let mut k_mask = vec![false; nx * ny];
    let mut k0_mask = vec![false; nx * ny];
    for j in 0..ny {
        for i in 0..nx {
            let q = grid.q_node(i);
            let p = grid.p_nodes[j];
            let dq = periodic_interval_distance(q, q0, q1, grid.period);
            let dp = if p < pa {
                pa - p
            } else if p > pb {
                p - pb
            } else {
                0.0
            };
            let d = (dq * dq + dp * dp).sqrt();
            if d == 0.0 {
                k_mask[j * nx + i] = true;
            }
            if d <= eps0 {
                k0_mask[j * nx + i] = true;
            }
        }
    }
    if !k_mask.iter().any(|&b| b) {
        return Err(Error::invalid("selected K contains no grid nodes"));
    }
    Ok(RegionSpec {
        domain: DomainKind::Strip,
        eps0,
        x_range: q_range,
        y_range: p_range,
        nx,
        ny,
        k_mask,
        k0_mask,
    })
}

/// One-dimensional analogue of [`RegionSpec`] for line studies: the open
/// interval `V = (a, b)` with compact `K = [k_lo, k_hi]` strictly inside.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LineRegion {
    pub v: (f64, f64),
    pub k: (f64, f64),
    pub eps0: f64,
    /// Uniform evaluation nodes covering K, used as the discrete sup set.
    pub nodes: Vec<f64>,
}

impl LineRegion {
    pub fn new(v: (f64, f64), k: (f64, f64), n_nodes: usize) -> Result<Self> {
        let (a, b) = v;
        let (k_lo, k_hi) = k;
        if !(a < b && k_lo < k_hi) {
            return Err(Error::invalid("empty interval"));
        }
        let dist = (k_lo - a).min(b - k_hi);
        if !(dist > 0.0) {
            return Err(Error::invalid(
                "K touches the interval boundary; eps0 would be 0",
            ));
        }
        if n_nodes < 8 {
            return Err(Error::invalid("need at least 8 evaluation nodes"));
        }
        let nodes = (0..n_nodes)
            .map(|s| k_lo + (k_hi - k_lo) * s as f64 / (n_nodes - 1) as f64)
            .collect();
        Ok(LineRegion {
            v,
            k,
            eps0: dist / 2.0,
            nodes,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    #[test]
    fn constant_surface_has_zero_slope() {
        let s = build_surface(2.0 * PI, &vec![1.0; 64]).unwrap();
        assert!(s.eta_prime.iter().all(|&d| d.abs() < 1e-13));
        assert_eq!(s.derivative_consistency(), 0.0);
    }

    #[test]
    fn cosine_surface_slope_matches_analytic() {
        let n = 256;
        let l = 2.0 * PI;
        let samples: Vec<f64> = (0..n)
            .map(|i| 1.0 + 0.1 * (i as f64 * l / n as f64).cos())
            .collect();
        let s = build_surface(l, &samples).unwrap();
        for i in 0..n {
            let x = s.x_node(i);
            assert_abs_diff_eq!(s.eta_prime[i], -0.1 * x.sin(), epsilon = 1e-6);
        }
    }

    #[test]
    fn negative_sample_rejected_with_index() {
        let mut samples = vec![1.0; 32];
        samples[7] = -0.2;
        let err = build_surface(2.0 * PI, &samples).unwrap_err();
        assert!(err.to_string().contains("sample 7"));
    }

    #[test]
    fn too_few_samples_rejected() {
        assert!(build_surface(1.0, &[1.0; 7]).is_err());
    }

    #[test]
    fn fluid_interior_region_halves_boundary_distance() {
        let l = 2.0 * PI;
        let grid = FluidGrid::uniform(build_surface(l, &vec![1.0; 64]).unwrap(), 33).unwrap();
        let r = interior_region(&grid, (0.0, l), (0.3, 0.7)).unwrap();
        assert_abs_diff_eq!(r.eps0, 0.15, epsilon = 1e-9);
        assert!(!r.k_nodes().is_empty());
    }

    #[test]
    fn strip_interior_region_halves_boundary_distance() {
        let grid = StripGrid::new(2.0 * PI, -1.0, 64, 33).unwrap();
        let r = interior_region_strip(&grid, (0.0, 2.0 * PI), (-0.75, -0.25)).unwrap();
        assert_abs_diff_eq!(r.eps0, 0.125, epsilon = 1e-12);
    }

    #[test]
    fn region_touching_bed_rejected() {
        let grid =
            FluidGrid::uniform(build_surface(2.0 * PI, &vec![1.0; 64]).unwrap(), 33).unwrap();
        assert!(interior_region(&grid, (0.0, 2.0 * PI), (0.0, 0.5)).is_err());
    }

    #[test]
    fn k_nodes_keep_headroom_for_all_eps_below_eps0() {
        let l = 2.0 * PI;
        let samples: Vec<f64> = (0..64)
            .map(|i| 1.0 + 0.1 * (i as f64 * l / 64.0).cos())
            .collect();
        let grid = FluidGrid::uniform(build_surface(l, &samples).unwrap(), 41).unwrap();
        let r = interior_region(&grid, (1.0, 4.0), (0.3, 0.6)).unwrap();
        for k in 1..=8 {
            let eps = r.eps0 * (1.0 - 1.0 / (1 << k) as f64);
            for (i, j) in r.k_nodes() {
                let x = grid.x_node(i);
                let y = grid.y_node(i, j);
                // Distance to bed and to the surface curve must exceed eps.
                assert!(y > eps);
                for s in 0..256 {
                    let xs = s as f64 * l / 256.0;
                    let es = grid.surface.eta_at(xs);
                    let dx = {
                        let raw = (x - xs).abs();
                        raw.min(l - raw)
                    };
                    let d = (dx * dx + (es - y) * (es - y)).sqrt();
                    assert!(
                        d > eps,
                        "node ({i},{j}) within eps of surface: d = {d}, eps = {eps}"
                    );
                }
            }
        }
    }
}

//! Solution types for the three formulations and their pointwise
//! invariant and boundary-condition checks.
//!
//! A solution object carries its first-derivative arrays alongside the
//! field: the weak formulations treat those derivatives as classical data,
//! so generators and transforms populate them with the most accurate values
//! they know (closed forms where available, the recorded grid schemes
//! otherwise).

use crate::error::{Error, Result};
use crate::geometry::{FluidGrid, StripGrid};
use crate::numerics::field::Field2;
use crate::numerics::gridops::{fluid_deriv_x, fluid_deriv_y, strip_deriv_p};
use crate::numerics::interp::cubic_interp_clamped;
use crate::numerics::quad::cumint_cubic;
use crate::report::{ResidualItem, ResidualReport};
use serde::{Deserialize, Serialize};

/// Physical and normalization constants shared by all formulations.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct FlowParameters {
    /// Wave speed of the travelling frame.
    pub c: f64,
    /// Gravitational acceleration, positive.
    pub g: f64,
    /// Constant atmospheric pressure at the free surface.
    pub p_atm: f64,
    /// Horizontal period of the wave.
    pub period: f64,
    /// Relative mass-flux constant: `psi = -p0` on the bed, negative.
    pub p0: f64,
    /// Bernoulli head: `|grad psi|^2 + 2 g y = Q` on the surface.
    pub q: f64,
    /// Additive Bernoulli constant fixed by the surface pressure
    /// normalization (`P + |grad psi|^2/2 + g y = Gamma(-psi) + B`).
    pub b: f64,
}

impl FlowParameters {
    pub fn validate(&self) -> Result<()> {
        if !(self.g > 0.0) {
            return Err(Error::invalid(format!("g must be positive, got {}", self.g)));
        }
        if !(self.p0 < 0.0) {
            return Err(Error::invalid(format!("p0 must be negative, got {}", self.p0)));
        }
        if !(self.period > 0.0) {
            return Err(Error::invalid("period must be positive"));
        }
        Ok(())
    }
}

/// Provenance carried in solution files and reports.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct SolutionMeta {
    pub generator: String,
    pub seed: Option<u64>,
    /// Set by generators that inject Hoelder-rough components; diagnostic
    /// operations that assume smoothness refuse such solutions.
    pub rough: bool,
    /// Description of how the derivative arrays were obtained.
    pub derivative_scheme: String,
}

/// Vorticity data on the strip: the antiderivative `Gamma` (normalized to
/// `Gamma(0) = 0`) and optionally its density `gamma(-p) = Gamma'(p)`
/// sampled at the same nodes.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VorticityProfile {
    /// Increasing nodes spanning `[p0, 0]`.
    pub p_nodes: Vec<f64>,
    /// `Gamma(p_j)`.
    pub gamma_int: Vec<f64>,
    /// `gamma(-p_j)`, when the density is known.
    pub gamma: Option<Vec<f64>>,
}

impl VorticityProfile {
    /// Profile with `gamma = 0` identically.
    pub fn irrotational(p_nodes: Vec<f64>) -> Self {
        let n = p_nodes.len();
        VorticityProfile {
            p_nodes,
            gamma_int: vec![0.0; n],
            gamma: Some(vec![0.0; n]),
        }
    }

    /// Builds the profile from density samples `gamma(-p_j)` by cumulative
    /// quadrature of `Gamma(p) = int_0^p gamma(-s) ds`.
    pub fn from_gamma(p_nodes: Vec<f64>, gamma: Vec<f64>) -> Result<Self> {
        if p_nodes.len() != gamma.len() || p_nodes.len() < 4 {
            return Err(Error::invalid("vorticity profile needs >= 4 matching samples"));
        }
        let cum = cumint_cubic(&gamma, &p_nodes);
        let at_zero = *cum.last().unwrap();
        let gamma_int = cum.iter().map(|v| v - at_zero).collect();
        Ok(VorticityProfile {
            p_nodes,
            gamma_int,
            gamma: Some(gamma),
        })
    }

    /// Builds the profile from `Gamma` samples, renormalizing so that
    /// `Gamma(0) = 0`.
    pub fn from_gamma_int(p_nodes: Vec<f64>, mut gamma_int: Vec<f64>) -> Result<Self> {
        if p_nodes.len() != gamma_int.len() || p_nodes.len() < 4 {
            return Err(Error::invalid("vorticity profile needs >= 4 matching samples"));
        }
        let at_zero = *gamma_int.last().unwrap();
        for v in &mut gamma_int {
            *v -= at_zero;
        }
        Ok(VorticityProfile {
            p_nodes,
            gamma_int,
            gamma: None,
        })
    }

    pub fn p0(&self) -> f64 {
        self.p_nodes[0]
    }

    /// `Gamma(p)` by clamped cubic interpolation.
    pub fn gamma_int_at(&self, p: f64) -> f64 {
        cubic_interp_clamped(&self.p_nodes, &self.gamma_int, p)
    }

    /// `gamma(-p)` by interpolation of the stored density (error when the
    /// density was never provided).
    pub fn gamma_at(&self, p: f64) -> Result<f64> {
        match &self.gamma {
            Some(g) => Ok(cubic_interp_clamped(&self.p_nodes, g, p)),
            None => Err(Error::invalid("vorticity density gamma not stored in profile")),
        }
    }

    /// Max mismatch between stored `Gamma` and the cumulative quadrature of
    /// the stored density; 0 when no density is present.
    pub fn quadrature_consistency(&self) -> f64 {
        match &self.gamma {
            None => 0.0,
            Some(g) => {
                let cum = cumint_cubic(g, &self.p_nodes);
                let at_zero = *cum.last().unwrap();
                self.gamma_int
                    .iter()
                    .zip(cum.iter().map(|v| v - at_zero))
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max)
            }
        }
    }
}

/// Velocity formulation data: `(u, v, P)` on a fluid grid.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VelocitySolution {
    pub params: FlowParameters,
    pub grid: FluidGrid,
    pub u: Field2,
    pub v: Field2,
    pub pressure: Field2,
    pub meta: SolutionMeta,
}

/// Stream-function formulation data: `psi` (with classical first
/// derivatives) and the vorticity profile.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StreamSolution {
    pub params: FlowParameters,
    pub grid: FluidGrid,
    pub psi: Field2,
    pub psi_x: Field2,
    pub psi_y: Field2,
    pub vorticity: VorticityProfile,
    pub meta: SolutionMeta,
}

/// Height (Dubreil-Jacotin) formulation data: streamline height `h` on the
/// strip with classical first derivatives.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HeightSolution {
    pub params: FlowParameters,
    pub grid: StripGrid,
    pub h: Field2,
    pub h_q: Field2,
    pub h_p: Field2,
    pub vorticity: VorticityProfile,
    pub meta: SolutionMeta,
}

/// The Bernoulli field `F = P + |grad psi|^2 / 2 + g y` on the fluid grid,
/// optionally with its pullback to the strip. Constancy along streamlines
/// is a check result, not a construction invariant.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BernoulliField {
    pub grid: FluidGrid,
    pub f: Field2,
    pub strip: Option<(StripGrid, Field2)>,
}

/// A solution in any formulation, as stored in solution files.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub enum Solution {
    Velocity(VelocitySolution),
    Stream(StreamSolution),
    Height(HeightSolution),
}

impl Solution {
    pub fn formulation(&self) -> &'static str {
        match self {
            Solution::Velocity(_) => "velocity",
            Solution::Stream(_) => "stream",
            Solution::Height(_) => "height",
        }
    }

    pub fn params(&self) -> &FlowParameters {
        match self {
            Solution::Velocity(s) => &s.params,
            Solution::Stream(s) => &s.params,
            Solution::Height(s) => &s.params,
        }
    }

    pub fn meta(&self) -> &SolutionMeta {
        match self {
            Solution::Velocity(s) => &s.meta,
            Solution::Stream(s) => &s.meta,
            Solution::Height(s) => &s.meta,
        }
    }

    pub fn check_invariants(&self, tols: &CheckTolerances) -> ResidualReport {
        match self {
            Solution::Velocity(s) => check_velocity_invariants(s, tols),
            Solution::Stream(s) => check_stream_invariants(s, tols),
            Solution::Height(s) => check_height_invariants(s, tols),
        }
    }
}

/// Tolerances for invariant checks. Equality conditions default to
/// `c_delta2 * spacing^2` with the grid spacing of the checked solution;
/// strict sign conditions compare against `sign` (default 0).
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct CheckTolerances {
    pub sign: f64,
    pub equality: Option<f64>,
    pub c_delta2: f64,
}

impl Default for CheckTolerances {
    fn default() -> Self {
        CheckTolerances {
            sign: 0.0,
            equality: None,
            c_delta2: 10.0,
        }
    }
}

impl CheckTolerances {
    pub fn with_equality(tol: f64) -> Self {
        CheckTolerances {
            equality: Some(tol),
            ..Default::default()
        }
    }

    pub fn equality_tol(&self, spacing: f64) -> f64 {
        self.equality.unwrap_or(self.c_delta2 * spacing * spacing)
    }
}

fn max_abs_row(f: &Field2, j: usize) -> f64 {
    f.row(j).iter().fold(0.0f64, |m, &v| m.max(v.abs()))
}

/// Invariants of the velocity formulation: `u < c` everywhere, horizontal
/// velocity at the bed, the kinematic surface condition, and the dynamic
/// surface condition.
pub fn check_velocity_invariants(sol: &VelocitySolution, tols: &CheckTolerances) -> ResidualReport {
    let mut report = ResidualReport::new("velocity invariants");
    let tol = tols.equality_tol(sol.grid.spacing());
    let (nx, ny) = (sol.grid.nx(), sol.grid.ny());

    let max_u = sol.u.max();
    let margin = sol.params.c - max_u;
    report.push(ResidualItem::strict(
        "u < c",
        vec![("margin".into(), margin)],
        max_u - sol.params.c,
        tols.sign,
    ));

    report.push(ResidualItem::equality(
        "v = 0 on bed",
        vec![],
        max_abs_row(&sol.v, 0),
        tol,
    ));

    let mut kin: f64 = 0.0;
    for i in 0..nx {
        let s = ny - 1;
        let want = (sol.u.at(i, s) - sol.params.c) * sol.grid.surface.eta_prime[i];
        kin = kin.max((sol.v.at(i, s) - want).abs());
    }
    report.push(ResidualItem::equality(
        "v = (u - c) eta' on surface",
        vec![],
        kin,
        tol,
    ));

    let mut dyn_p: f64 = 0.0;
    for i in 0..nx {
        dyn_p = dyn_p.max((sol.pressure.at(i, ny - 1) - sol.params.p_atm).abs());
    }
    report.push(ResidualItem::equality(
        "P = P_atm on surface",
        vec![],
        dyn_p,
        tol,
    ));
    report
}

/// Invariants of the stream formulation: `psi_y < 0` (grid-derivative
/// estimate), boundary values of `psi`, the surface Bernoulli condition,
/// and the vorticity-profile normalization.
pub fn check_stream_invariants(sol: &StreamSolution, tols: &CheckTolerances) -> ResidualReport {
    let mut report = ResidualReport::new("stream invariants");
    let tol = tols.equality_tol(sol.grid.spacing());
    let (nx, ny) = (sol.grid.nx(), sol.grid.ny());

    let psi_y_fd = fluid_deriv_y(&sol.grid, &sol.psi);
    let max_psi_y = psi_y_fd.max();
    report.push(ResidualItem::strict(
        "psi_y < 0",
        vec![("margin".into(), -max_psi_y)],
        max_psi_y,
        tols.sign,
    ));

    let mut bed: f64 = 0.0;
    for i in 0..nx {
        bed = bed.max((sol.psi.at(i, 0) + sol.params.p0).abs());
    }
    report.push(ResidualItem::equality("psi = -p0 on bed", vec![], bed, tol));

    report.push(ResidualItem::equality(
        "psi = 0 on surface",
        vec![],
        max_abs_row(&sol.psi, ny - 1),
        tol,
    ));

    let mut bern: f64 = 0.0;
    for i in 0..nx {
        let s = ny - 1;
        let grad2 = sol.psi_x.at(i, s).powi(2) + sol.psi_y.at(i, s).powi(2);
        let y = sol.grid.y_node(i, s);
        bern = bern.max((grad2 + 2.0 * sol.params.g * y - sol.params.q).abs());
    }
    report.push(ResidualItem::equality(
        "|grad psi|^2 + 2 g y = Q on surface",
        vec![],
        bern,
        tol,
    ));

    push_vorticity_items(&mut report, &sol.vorticity, tol);
    report
}

/// Invariants of the height formulation: `h_p > 0` (grid-derivative
/// estimate), `h = 0` on the bed image, the nonlinear surface condition,
/// and the vorticity-profile normalization.
pub fn check_height_invariants(sol: &HeightSolution, tols: &CheckTolerances) -> ResidualReport {
    let mut report = ResidualReport::new("height invariants");
    let tol = tols.equality_tol(sol.grid.spacing());
    let (nq, np) = (sol.grid.nq, sol.grid.np());

    let h_p_fd = strip_deriv_p(&sol.grid, &sol.h);
    let min_h_p = h_p_fd.min();
    report.push(ResidualItem::strict(
        "h_p > 0",
        vec![("margin".into(), min_h_p)],
        -min_h_p,
        tols.sign,
    ));

    report.push(ResidualItem::equality(
        "h = 0 on p = p0",
        vec![],
        max_abs_row(&sol.h, 0),
        tol,
    ));

    let mut surf: f64 = 0.0;
    for i in 0..nq {
        let s = np - 1;
        let hq = sol.h_q.at(i, s);
        let hp = sol.h_p.at(i, s);
        let val = (1.0 + hq * hq) / (2.0 * hp * hp) + sol.params.g * sol.h.at(i, s)
            - sol.params.q / 2.0;
        surf = surf.max(val.abs());
    }
    report.push(ResidualItem::equality(
        "(1 + h_q^2)/(2 h_p^2) + g h - Q/2 = 0 on p = 0",
        vec![],
        surf,
        tol,
    ));

    push_vorticity_items(&mut report, &sol.vorticity, tol);
    report
}

fn push_vorticity_items(report: &mut ResidualReport, profile: &VorticityProfile, tol: f64) {
    report.push(ResidualItem::equality(
        "Gamma(0) = 0",
        vec![],
        profile.gamma_int.last().unwrap().abs(),
        tol,
    ));
    if profile.gamma.is_some() {
        report.push(ResidualItem::equality(
            "Gamma matches cumulative quadrature of gamma",
            vec![],
            profile.quadrature_consistency(),
            tol,
        ));
    }
}

/// Vorticity diagnostic `omega = -Delta psi`, computed by composing the
/// recorded first-derivative schemes (spectral in x, 4th-order stencils in
/// the vertical). Valid on interior nodes of reasonably fine grids.
pub fn vorticity(sol: &StreamSolution) -> Result<Field2> {
    let grid = &sol.grid;
    if grid.nx() < 6 || grid.ny() < 6 {
        return Err(Error::invalid(
            "grid too coarse for the vorticity diagnostic (need >= 4 interior nodes per direction)",
        ));
    }
    let px = fluid_deriv_x(grid, &sol.psi);
    let py = fluid_deriv_y(grid, &sol.psi);
    let pxx = fluid_deriv_x(grid, &px);
    let pyy = fluid_deriv_y(grid, &py);
    Ok(pxx.zip_with(&pyy, |a, b| -(a + b)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{build_surface, FluidGrid, StripGrid};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    fn flat_grid(nx: usize, ny: usize) -> FluidGrid {
        FluidGrid::uniform(build_surface(2.0 * PI, &vec![1.0; nx]).unwrap(), ny).unwrap()
    }

    fn still_water(nx: usize, ny: usize) -> (VelocitySolution, StreamSolution, HeightSolution) {
        // S0: c = 1, g = 1, depth 1, gamma = 0. psi = 1 - y, h = 1 + p.
        let grid = flat_grid(nx, ny);
        let params = FlowParameters {
            c: 1.0,
            g: 1.0,
            p_atm: 0.0,
            period: 2.0 * PI,
            p0: -1.0,
            q: 3.0,
            b: 1.5,
        };
        let zero = Field2::zeros(nx, ny);
        let vel = VelocitySolution {
            params,
            grid: grid.clone(),
            u: zero.clone(),
            v: zero.clone(),
            pressure: Field2::from_fn(nx, ny, |i, j| 1.0 - grid.y_node(i, j)),
            meta: SolutionMeta::default(),
        };
        let p_nodes: Vec<f64> = (0..ny).map(|j| -1.0 + j as f64 / (ny - 1) as f64).collect();
        let stream = StreamSolution {
            params,
            grid: grid.clone(),
            psi: Field2::from_fn(nx, ny, |i, j| 1.0 - grid.y_node(i, j)),
            psi_x: zero.clone(),
            psi_y: Field2::from_fn(nx, ny, |_, _| -1.0),
            vorticity: VorticityProfile::irrotational(p_nodes.clone()),
            meta: SolutionMeta::default(),
        };
        let sgrid = StripGrid::new(2.0 * PI, -1.0, nx, ny).unwrap();
        let height = HeightSolution {
            params,
            grid: sgrid.clone(),
            h: Field2::from_fn(nx, ny, |_, j| 1.0 + sgrid.p_nodes[j]),
            h_q: Field2::zeros(nx, ny),
            h_p: Field2::from_fn(nx, ny, |_, _| 1.0),
            vorticity: VorticityProfile::irrotational(p_nodes),
            meta: SolutionMeta::default(),
        };
        (vel, stream, height)
    }

    #[test]
    fn still_water_passes_all_invariants_tightly() {
        let (vel, stream, height) = still_water(64, 33);
        let tols = CheckTolerances::with_equality(1e-12);
        for report in [
            check_velocity_invariants(&vel, &tols),
            check_stream_invariants(&stream, &tols),
            check_height_invariants(&height, &tols),
        ] {
            assert!(report.pass, "failed: {}", report.to_json());
            for item in &report.items {
                assert!(item.worst <= 1e-12, "{}: {}", item.label, item.worst);
            }
        }
    }

    #[test]
    fn forced_velocity_violation_is_flagged_with_margin() {
        let (mut vel, _, _) = still_water(32, 17);
        vel.u.set(3, 5, vel.params.c + 0.1);
        let report = check_velocity_invariants(&vel, &CheckTolerances::default());
        let item = report.items.iter().find(|i| i.label == "u < c").unwrap();
        assert!(!item.pass);
        assert_abs_diff_eq!(item.entries[0].1, -0.1, epsilon = 1e-12);
    }

    #[test]
    fn tightening_tolerances_never_turns_fail_into_pass() {
        let (mut vel, _, _) = still_water(32, 17);
        // Break the surface pressure condition a bit.
        let ny = vel.grid.ny();
        vel.pressure.set(0, ny - 1, 0.5);
        let loose = check_velocity_invariants(&vel, &CheckTolerances::with_equality(1.0));
        let tight = check_velocity_invariants(&vel, &CheckTolerances::with_equality(1e-9));
        for (a, b) in loose.items.iter().zip(&tight.items) {
            // pass(tight) implies pass(loose)
            assert!(!b.pass || a.pass);
        }
    }

    #[test]
    fn vorticity_of_linear_and_quadratic_profiles() {
        let (_, s0, _) = still_water(48, 25);
        let w = vorticity(&s0).unwrap();
        assert!(w.max_abs() < 1e-10);

        // S1: psi = 1.5 - y - y^2/2 gives omega = -Delta psi = 1.
        let grid = flat_grid(48, 25);
        let mut s1 = s0.clone();
        s1.psi = Field2::from_fn(48, 25, |i, j| {
            let y = grid.y_node(i, j);
            1.5 - y - y * y / 2.0
        });
        let w1 = vorticity(&s1).unwrap();
        for j in 0..25 {
            for i in 0..48 {
                assert_abs_diff_eq!(w1.at(i, j), 1.0, epsilon = 1e-9);
            }
        }
    }

    #[test]
    fn vorticity_matches_symbolic_laplacian() {
        // psi = sin(x) * y: Delta psi = -sin(x) y, so omega = sin(x) y.
        let grid = flat_grid(96, 33);
        let (_, mut s, _) = still_water(96, 33);
        s.psi = Field2::from_fn(96, 33, |i, j| grid.x_node(i).sin() * grid.y_node(i, j));
        let w = vorticity(&s).unwrap();
        for j in 0..33 {
            for i in 0..96 {
                let exact = grid.x_node(i).sin() * grid.y_node(i, j);
                assert_abs_diff_eq!(w.at(i, j), exact, epsilon = 1e-8);
            }
        }
    }

    #[test]
    fn vorticity_profile_consistency() {
        let p: Vec<f64> = (0..17).map(|j| -1.5 + 1.5 * j as f64 / 16.0).collect();
        let gamma = vec![1.0; 17];
        let prof = VorticityProfile::from_gamma(p.clone(), gamma).unwrap();
        // Gamma(p) = p for constant unit density.
        for (j, &pj) in p.iter().enumerate() {
            assert_abs_diff_eq!(prof.gamma_int[j], pj, epsilon = 1e-13);
        }
        assert!(prof.quadrature_consistency() < 1e-13);
        assert_eq!(prof.gamma_int.last().copied().unwrap(), 0.0);
    }
}

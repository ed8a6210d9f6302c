//! Derivatives of nodal fields over the two grid types: spectral along the
//! periodic direction, 5-point Fornberg stencils in the vertical, with the
//! terrain-following chain rule on fluid grids.

use crate::geometry::{FluidGrid, StripGrid};
use crate::numerics::diff::{column_derivative, spectral_derivative};
use crate::numerics::field::Field2;

/// d/dx at fixed physical y of a field stored on the sigma chart:
/// `f_x|_y = f_x|_sigma - (sigma * eta' / eta) * f_sigma`.
pub fn fluid_deriv_x(grid: &FluidGrid, f: &Field2) -> Field2 {
    let (nx, ny) = (grid.nx(), grid.ny());
    let fx_sigma = rows_spectral(f, grid.period());
    let fs = columns_fornberg(f, &grid.sigma);
    Field2::from_fn(nx, ny, |i, j| {
        let eta = grid.surface.eta[i];
        let etap = grid.surface.eta_prime[i];
        fx_sigma.at(i, j) - grid.sigma[j] * etap / eta * fs.at(i, j)
    })
}

/// d/dy of a fluid-grid field: `f_sigma / eta`.
pub fn fluid_deriv_y(grid: &FluidGrid, f: &Field2) -> Field2 {
    let fs = columns_fornberg(f, &grid.sigma);
    Field2::from_fn(grid.nx(), grid.ny(), |i, j| fs.at(i, j) / grid.surface.eta[i])
}

/// d/dq of a strip-grid field (spectral rows).
pub fn strip_deriv_q(grid: &StripGrid, f: &Field2) -> Field2 {
    rows_spectral(f, grid.period)
}

/// d/dp of a strip-grid field (Fornberg columns).
pub fn strip_deriv_p(grid: &StripGrid, f: &Field2) -> Field2 {
    columns_fornberg(f, &grid.p_nodes)
}

fn rows_spectral(f: &Field2, period: f64) -> Field2 {
    let mut out = Field2::zeros(f.nx, f.ny);
    for j in 0..f.ny {
        let d = spectral_derivative(f.row(j), period);
        out.row_mut(j).copy_from_slice(&d);
    }
    out
}

fn columns_fornberg(f: &Field2, nodes: &[f64]) -> Field2 {
    let mut out = Field2::zeros(f.nx, f.ny);
    for i in 0..f.nx {
        let col = f.column(i);
        let d = column_derivative(&col, nodes);
        for (j, v) in d.into_iter().enumerate() {
            out.set(i, j, v);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{build_surface, FluidGrid};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    #[test]
    fn chain_rule_recovers_physical_derivatives_on_curved_surface() {
        let l = 2.0 * PI;
        let n = 96;
        let samples: Vec<f64> = (0..n)
            .map(|i| 1.0 + 0.1 * (i as f64 * l / n as f64).cos())
            .collect();
        let grid = FluidGrid::uniform(build_surface(l, &samples).unwrap(), 49).unwrap();
        // f(x, y) = sin(x) * y^2 has fx = cos(x) y^2, fy = 2 sin(x) y.
        let f = Field2::from_fn(grid.nx(), grid.ny(), |i, j| {
            let x = grid.x_node(i);
            let y = grid.y_node(i, j);
            x.sin() * y * y
        });
        let fx = fluid_deriv_x(&grid, &f);
        let fy = fluid_deriv_y(&grid, &f);
        for j in 0..grid.ny() {
            for i in 0..grid.nx() {
                let x = grid.x_node(i);
                let y = grid.y_node(i, j);
                assert_abs_diff_eq!(fx.at(i, j), x.cos() * y * y, epsilon = 2e-5);
                assert_abs_diff_eq!(fy.at(i, j), 2.0 * x.sin() * y, epsilon = 2e-6);
            }
        }
    }
}

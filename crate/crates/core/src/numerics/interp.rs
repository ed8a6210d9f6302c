//! Cubic Lagrange interpolation, periodic in the horizontal direction and
//! clamped in the vertical one. 4-point stencils give O(h^4) accuracy on
//! smooth data and reproduce cubics exactly.

/// Value at `t` of the cubic through `(xs[k], ys[k])`, `k = 0..4`.
fn lagrange4(xs: &[f64; 4], ys: &[f64; 4], t: f64) -> f64 {
    let mut acc = 0.0;
    for k in 0..4 {
        let mut w = ys[k];
        for m in 0..4 {
            if m != k {
                w *= (t - xs[m]) / (xs[k] - xs[m]);
            }
        }
        acc += w;
    }
    acc
}

/// Interpolates periodic samples `f[i]` at `x_i = i * period / n`.
pub fn cubic_interp_periodic(f: &[f64], period: f64, x: f64) -> f64 {
    let n = f.len();
    assert!(n >= 4);
    let h = period / n as f64;
    let s = (x / h).floor();
    let i0 = s as i64;
    let xs = [
        (s - 1.0) * h,
        s * h,
        (s + 1.0) * h,
        (s + 2.0) * h,
    ];
    let wrap = |k: i64| -> f64 { f[k.rem_euclid(n as i64) as usize] };
    let ys = [wrap(i0 - 1), wrap(i0), wrap(i0 + 1), wrap(i0 + 2)];
    lagrange4(&xs, &ys, x)
}

/// Interpolates samples on strictly increasing `nodes` at `x`, with the
/// stencil clamped at the ends. `x` slightly outside the node range is
/// evaluated by the boundary cubic (needed for root solves that touch the
/// interval endpoints).
pub fn cubic_interp_clamped(nodes: &[f64], f: &[f64], x: f64) -> f64 {
    let n = nodes.len();
    assert!(n >= 4);
    assert_eq!(f.len(), n);
    let cell = locate_cell(nodes, x);
    let lo = cell.saturating_sub(1).min(n - 4);
    let xs = [nodes[lo], nodes[lo + 1], nodes[lo + 2], nodes[lo + 3]];
    let ys = [f[lo], f[lo + 1], f[lo + 2], f[lo + 3]];
    lagrange4(&xs, &ys, x)
}

/// Index `c` with `nodes[c] <= x < nodes[c+1]`, clamped to valid cells.
pub fn locate_cell(nodes: &[f64], x: f64) -> usize {
    let n = nodes.len();
    match nodes.binary_search_by(|v| v.partial_cmp(&x).unwrap()) {
        Ok(i) => i.min(n - 2),
        Err(i) => i.saturating_sub(1).min(n - 2),
    }
}

/// Bicubic interpolation of a [`super::Field2`]-shaped table: periodic in
/// the horizontal index, clamped on the vertical `nodes`.
#[derive(Debug, Clone)]
pub struct Bicubic {
    nx: usize,
    period: f64,
    vert_nodes: Vec<f64>,
    /// Row-major values, `values[j * nx + i]`.
    values: Vec<f64>,
}

impl Bicubic {
    pub fn new(nx: usize, period: f64, vert_nodes: Vec<f64>, values: Vec<f64>) -> Self {
        assert!(nx >= 4 && vert_nodes.len() >= 4);
        assert_eq!(values.len(), nx * vert_nodes.len());
        Bicubic {
            nx,
            period,
            vert_nodes,
            values,
        }
    }

    /// Value at horizontal coordinate `x` (periodic) and vertical
    /// coordinate `s` (clamped stencil).
    pub fn eval(&self, x: f64, s: f64) -> f64 {
        let ny = self.vert_nodes.len();
        let cell = locate_cell(&self.vert_nodes, s);
        let lo = cell.saturating_sub(1).min(ny - 4);
        let mut col_x = [0.0; 4];
        let mut col_s = [0.0; 4];
        for k in 0..4 {
            let j = lo + k;
            let row = &self.values[j * self.nx..(j + 1) * self.nx];
            col_x[k] = cubic_interp_periodic(row, self.period, x);
            col_s[k] = self.vert_nodes[j];
        }
        lagrange4(&col_s, &col_x, s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn periodic_cubic_reproduces_cubics() {
        // On one cell away from the seam a cubic is reproduced exactly.
        let n = 16;
        let period = 4.0;
        let f: Vec<f64> = (0..n)
            .map(|i| {
                let x = i as f64 * period / n as f64;
                0.3 * x * x * x - x * x + 2.0
            })
            .collect();
        for &x in &[0.9, 1.33, 2.0, 2.8] {
            let exact = 0.3 * x * x * x - x * x + 2.0;
            assert_abs_diff_eq!(
                cubic_interp_periodic(&f, period, x),
                exact,
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn periodic_cubic_wraps_smoothly() {
        let n = 64;
        let period = 2.0 * std::f64::consts::PI;
        let f: Vec<f64> = (0..n)
            .map(|i| (i as f64 * period / n as f64).sin())
            .collect();
        for &x in &[-0.01, 0.0, 0.01, period - 0.01, period + 0.05] {
            assert_abs_diff_eq!(
                cubic_interp_periodic(&f, period, x),
                x.sin(),
                epsilon = 1e-5
            );
        }
    }

    #[test]
    fn clamped_cubic_fourth_order() {
        let err = |m: usize| -> f64 {
            let nodes: Vec<f64> = (0..m).map(|j| j as f64 / (m - 1) as f64).collect();
            let f: Vec<f64> = nodes.iter().map(|&y| (3.0 * y).exp()).collect();
            let mut worst: f64 = 0.0;
            for k in 0..200 {
                let x = k as f64 / 199.0;
                worst = worst.max((cubic_interp_clamped(&nodes, &f, x) - (3.0 * x).exp()).abs());
            }
            worst
        };
        let ratio = err(33) / err(65);
        assert!(ratio > 10.0, "expected ~16x, got {ratio}");
    }

    #[test]
    fn bicubic_matches_separable_product() {
        let nx = 48;
        let period = 2.0 * std::f64::consts::PI;
        let nodes: Vec<f64> = (0..33).map(|j| j as f64 / 32.0).collect();
        let mut values = vec![0.0; nx * nodes.len()];
        for (j, &s) in nodes.iter().enumerate() {
            for i in 0..nx {
                let x = i as f64 * period / nx as f64;
                values[j * nx + i] = x.sin() * (1.0 + s * s);
            }
        }
        let interp = Bicubic::new(nx, period, nodes, values);
        for &(x, s) in &[(0.7, 0.41), (3.9, 0.93), (6.1, 0.02)] {
            assert_abs_diff_eq!(interp.eval(x, s), x.sin() * (1.0 + s * s), epsilon = 2e-6);
        }
    }
}

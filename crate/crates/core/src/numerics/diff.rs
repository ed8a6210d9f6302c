//! Differentiation: spectral in the periodic direction, Fornberg finite
//! differences (4th order on interior stencils, one-sided at boundaries)
//! in the bounded direction.

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

/// Derivative of a periodic sample set `f` on the uniform grid
/// `x_i = i * period / n` (endpoint excluded), computed in Fourier space.
pub fn spectral_derivative(f: &[f64], period: f64) -> Vec<f64> {
    let n = f.len();
    assert!(n >= 4, "spectral derivative needs at least 4 samples");
    assert!(period > 0.0);

    let mut planner = FftPlanner::<f64>::new();
    let fwd = planner.plan_fft_forward(n);
    let inv = planner.plan_fft_inverse(n);

    let mut buf: Vec<Complex<f64>> = f.iter().map(|&v| Complex::new(v, 0.0)).collect();
    fwd.process(&mut buf);

    let k0 = 2.0 * std::f64::consts::PI / period;
    for (m, c) in buf.iter_mut().enumerate() {
        // Signed wavenumber; the Nyquist mode of an even-length transform
        // has no well-defined odd derivative and is dropped.
        let k = if 2 * m < n {
            m as f64
        } else if 2 * m == n {
            0.0
        } else {
            m as f64 - n as f64
        };
        *c *= Complex::new(0.0, k * k0);
    }
    inv.process(&mut buf);

    let scale = 1.0 / n as f64;
    buf.iter().map(|c| c.re * scale).collect()
}

/// 4th-order centered periodic differences on a uniform grid. Used where a
/// strictly local scheme is preferable to the spectral one.
pub fn centered4_periodic(f: &[f64], period: f64) -> Vec<f64> {
    let n = f.len();
    assert!(n >= 5);
    let h = period / n as f64;
    let mut out = vec![0.0; n];
    for i in 0..n {
        let m2 = f[(i + n - 2) % n];
        let m1 = f[(i + n - 1) % n];
        let p1 = f[(i + 1) % n];
        let p2 = f[(i + 2) % n];
        out[i] = (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * h);
    }
    out
}

/// Fornberg finite-difference weights.
///
/// Returns `w` with `w[k][j]` such that the `k`-th derivative of `f` at `z`
/// is approximated by `sum_j w[k][j] f(x[j])`, for `k = 0..=m`. Nodes may be
/// arbitrarily spaced but must be distinct.
pub fn fd_weights(z: f64, x: &[f64], m: usize) -> Vec<Vec<f64>> {
    let n = x.len();
    assert!(n > m, "need more nodes than the derivative order");
    let mut c = vec![vec![0.0; n]; m + 1];
    let mut c1 = 1.0;
    let mut c4 = x[0] - z;
    c[0][0] = 1.0;
    for i in 1..n {
        let mn = i.min(m);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = x[i] - z;
        for j in 0..i {
            let c3 = x[i] - x[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[k][i] = c1 * (k as f64 * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                }
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for k in (1..=mn).rev() {
                c[k][j] = (c4 * c[k][j] - k as f64 * c[k - 1][j]) / c3;
            }
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    c
}

/// First derivative along a column of (possibly non-uniform) nodes using
/// 5-point Fornberg stencils: centered where possible, one-sided near the
/// ends. 4th-order accurate on smooth data.
pub fn column_derivative(values: &[f64], nodes: &[f64]) -> Vec<f64> {
    derivative_on_nodes(values, nodes, 1)
}

/// Second derivative along a column, 5-point stencils (3rd/4th order).
pub fn column_second_derivative(values: &[f64], nodes: &[f64]) -> Vec<f64> {
    derivative_on_nodes(values, nodes, 2)
}

fn derivative_on_nodes(values: &[f64], nodes: &[f64], order: usize) -> Vec<f64> {
    let n = nodes.len();
    assert_eq!(values.len(), n);
    assert!(n >= 5, "column derivative needs at least 5 nodes");
    let mut out = vec![0.0; n];
    for j in 0..n {
        let lo = j.saturating_sub(2).min(n - 5);
        let w = fd_weights(nodes[j], &nodes[lo..lo + 5], order);
        out[j] = (0..5).map(|s| w[order][s] * values[lo + s]).sum();
    }
    out
}

//! Quadrature: Gauss-Legendre nodes for kernel integrals and composite
//! 4th-order (Simpson-class) rules on column samples.

/// Gauss-Legendre nodes and weights on [-1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 2);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Chebyshev-based initial guess, then Newton on P_n.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_and_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

fn legendre_and_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let pk = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = pk;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Cumulative integral `I[j] = int_{x[0]}^{x[j]} f` where each panel is
/// integrated with the cubic through its 4 nearest samples. 4th-order
/// accurate, defined for any parity and non-uniform nodes.
pub fn cumint_cubic(f: &[f64], x: &[f64]) -> Vec<f64> {
    let n = x.len();
    assert_eq!(f.len(), n);
    assert!(n >= 4, "cumulative integral needs at least 4 samples");
    let mut out = vec![0.0; n];
    for j in 0..n - 1 {
        let lo = j.saturating_sub(1).min(n - 4);
        let xs = [x[lo], x[lo + 1], x[lo + 2], x[lo + 3]];
        let ys = [f[lo], f[lo + 1], f[lo + 2], f[lo + 3]];
        out[j + 1] = out[j] + panel_integral(&xs, &ys, x[j], x[j + 1]);
    }
    out
}

/// Integral over the full column, same rule as [`cumint_cubic`].
pub fn integrate_cubic(f: &[f64], x: &[f64]) -> f64 {
    *cumint_cubic(f, x).last().unwrap()
}

/// Integral over `[a, b]` of the cubic through `(xs, ys)`, computed by
/// integrating each Lagrange basis polynomial analytically.
fn panel_integral(xs: &[f64; 4], ys: &[f64; 4], a: f64, b: f64) -> f64 {
    let mut acc = 0.0;
    for k in 0..4 {
        // Basis numerator roots: the other three nodes.
        let mut r = [0.0; 3];
        let mut idx = 0;
        let mut denom = 1.0;
        for m in 0..4 {
            if m != k {
                r[idx] = xs[m];
                idx += 1;
                denom *= xs[k] - xs[m];
            }
        }
        // (t-r0)(t-r1)(t-r2) = t^3 - e1 t^2 + e2 t - e3
        let e1 = r[0] + r[1] + r[2];
        let e2 = r[0] * r[1] + r[0] * r[2] + r[1] * r[2];
        let e3 = r[0] * r[1] * r[2];
        let prim = |t: f64| t.powi(4) / 4.0 - e1 * t.powi(3) / 3.0 + e2 * t * t / 2.0 - e3 * t;
        acc += ys[k] * (prim(b) - prim(a)) / denom;
    }
    acc
}

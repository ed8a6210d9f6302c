//! Safeguarded monotone root finding: Newton steps clipped to a bracket,
//! bisection fallback. Convergence is guaranteed once a sign change
//! brackets the root.

use crate::error::{Error, Result};

/// Finds `x` in `[a, b]` with `f(x) = 0` to absolute tolerance `tol` on x.
///
/// Requires `f(a)` and `f(b)` to have opposite signs (or one endpoint to be
/// an exact root). `df`, when provided, accelerates with Newton steps; any
/// step leaving the bracket falls back to bisection.
pub fn bracketed_root(
    f: impl Fn(f64) -> f64,
    df: Option<&dyn Fn(f64) -> f64>,
    a: f64,
    b: f64,
    tol: f64,
    max_iter: usize,
) -> Result<f64> {
    assert!(tol > 0.0 && a < b);
    let fa = f(a);
    let fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::RootBracket(format!(
            "f({a:.6e}) = {fa:.3e} and f({b:.6e}) = {fb:.3e} have the same sign"
        )));
    }
    let (mut lo, mut hi, mut flo) = (a, b, fa);
    let mut x = 0.5 * (lo + hi);
    for _ in 0..max_iter {
        let fx = f(x);
        if fx == 0.0 {
            return Ok(x);
        }
        if fx.signum() == flo.signum() {
            lo = x;
            flo = fx;
        } else {
            hi = x;
        }
        if hi - lo <= tol {
            return Ok(0.5 * (lo + hi));
        }
        let mut next = None;
        if let Some(d) = df {
            let dx = d(x);
            if dx != 0.0 {
                let cand = x - fx / dx;
                if cand > lo && cand < hi {
                    next = Some(cand);
                }
            }
        }
        x = next.unwrap_or(0.5 * (lo + hi));
    }
    Err(Error::RootBracket(format!(
        "no convergence to tol {tol:.3e} in {max_iter} iterations (bracket [{lo:.6e}, {hi:.6e}])"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_root_with_and_without_derivative() {
        let f = |x: f64| x * x - 2.0;
        let df = |x: f64| 2.0 * x;
        let r1 = bracketed_root(f, Some(&df), 0.0, 2.0, 1e-13, 200).unwrap();
        let r2 = bracketed_root(f, None, 0.0, 2.0, 1e-13, 200).unwrap();
        assert!((r1 - 2f64.sqrt()).abs() < 1e-12);
        assert!((r2 - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn rejects_unbracketed() {
        let e = bracketed_root(|x| x * x + 1.0, None, -1.0, 1.0, 1e-10, 50);
        assert!(matches!(e, Err(Error::RootBracket(_))));
    }
}

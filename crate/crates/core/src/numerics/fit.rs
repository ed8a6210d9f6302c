//! Least-squares slope fits on log-log data, used by every rate study.

/// Result of a straight-line fit of `ln(y)` against `ln(x)`.
#[derive(Debug, Clone, Copy)]
pub struct LogLogFit {
    /// Fitted decay/growth exponent.
    pub slope: f64,
    /// Intercept in log space; `exp(intercept)` is the fitted constant.
    pub intercept: f64,
    /// Coefficient of determination of the log-log line.
    pub r2: f64,
}

/// Fits `y ~ C * x^slope` from positive samples. Non-positive or
/// non-finite samples are skipped; at least two usable points are required.
pub fn loglog_fit(points: &[(f64, f64)]) -> Option<LogLogFit> {
    let logs: Vec<(f64, f64)> = points
        .iter()
        .filter(|(x, y)| *x > 0.0 && *y > 0.0 && x.is_finite() && y.is_finite())
        .map(|&(x, y)| (x.ln(), y.ln()))
        .collect();
    if logs.len() < 2 {
        return None;
    }
    let n = logs.len() as f64;
    let sx: f64 = logs.iter().map(|p| p.0).sum();
    let sy: f64 = logs.iter().map(|p| p.1).sum();
    let mx = sx / n;
    let my = sy / n;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return None;
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res: f64 = logs
        .iter()
        .map(|p| {
            let r = p.1 - (intercept + slope * p.0);
            r * r
        })
        .sum();
    let ss_tot: f64 = logs.iter().map(|p| (p.1 - my) * (p.1 - my)).sum();
    let r2 = if ss_tot == 0.0 {
        1.0
    } else {
        1.0 - ss_res / ss_tot
    };
    Some(LogLogFit {
        slope,
        intercept,
        r2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_power_law() {
        let pts: Vec<(f64, f64)> = (1..8)
            .map(|k| {
                let x = 2f64.powi(-k);
                (x, 3.0 * x.powf(0.5))
            })
            .collect();
        let fit = loglog_fit(&pts).unwrap();
        assert!((fit.slope - 0.5).abs() < 1e-12);
        assert!((fit.intercept.exp() - 3.0).abs() < 1e-12);
        assert!(fit.r2 > 1.0 - 1e-12);
    }

    #[test]
    fn skips_degenerate_points() {
        assert!(loglog_fit(&[(1.0, 0.0), (0.5, 0.0)]).is_none());
    }
}

//! Structured reports: per-condition residual tables and rate studies with
//! fitted slopes. Reports serialize to JSON (machine) and CSV (plots), with
//! deterministic field order and formatting.

use crate::numerics::fit::loglog_fit;
use serde::{Deserialize, Serialize};

/// One checked condition or residual functional.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ResidualItem {
    pub label: String,
    /// Per-node-set or per-test-function values, in evaluation order.
    pub entries: Vec<(String, f64)>,
    /// The value compared against `tol` (max violation or max |residual|).
    pub worst: f64,
    pub tol: f64,
    pub pass: bool,
}

impl ResidualItem {
    /// Equality-type item: passes when `worst <= tol`.
    pub fn equality(label: impl Into<String>, entries: Vec<(String, f64)>, worst: f64, tol: f64) -> Self {
        ResidualItem {
            label: label.into(),
            entries,
            worst,
            tol,
            pass: worst <= tol,
        }
    }

    /// Strict-sign item: passes when `worst < tol` (tol is normally 0 and
    /// `worst` the signed violation, so any nonnegative value fails).
    pub fn strict(label: impl Into<String>, entries: Vec<(String, f64)>, worst: f64, tol: f64) -> Self {
        ResidualItem {
            label: label.into(),
            entries,
            worst,
            tol,
            pass: worst < tol,
        }
    }
}

/// A named collection of checked conditions.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ResidualReport {
    pub title: String,
    pub items: Vec<ResidualItem>,
    pub pass: bool,
    pub notes: Vec<String>,
}

impl ResidualReport {
    pub fn new(title: impl Into<String>) -> Self {
        ResidualReport {
            title: title.into(),
            items: Vec::new(),
            pass: true,
            notes: Vec::new(),
        }
    }

    pub fn push(&mut self, item: ResidualItem) {
        self.pass &= item.pass;
        self.items.push(item);
    }

    pub fn note(&mut self, msg: impl Into<String>) {
        self.notes.push(msg.into());
    }

    pub fn worst_of(&self, label: &str) -> Option<f64> {
        self.items.iter().find(|i| i.label == label).map(|i| i.worst)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }

    /// CSV with one row per entry (or per item when it has no entries).
    pub fn to_csv(&self) -> String {
        let mut out = String::from("item,entry,value,worst,tol,pass\n");
        for item in &self.items {
            if item.entries.is_empty() {
                out.push_str(&format!(
                    "{},,,{},{},{}\n",
                    item.label, item.worst, item.tol, item.pass
                ));
            }
            for (name, value) in &item.entries {
                out.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    item.label, name, value, item.worst, item.tol, item.pass
                ));
            }
        }
        out
    }
}

/// One measured point of an epsilon sweep.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct RatePoint {
    pub eps: f64,
    pub norm: f64,
}

/// Measured norms against the mollification scale with a fitted slope.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RateStudy {
    pub label: String,
    /// Strictly decreasing eps values with the measured sup-norms over K.
    pub points: Vec<RatePoint>,
    /// Exponent the estimate being exercised predicts, when one exists.
    pub predicted_slope: Option<f64>,
    pub fitted_slope: Option<f64>,
    pub fit_r2: Option<f64>,
    /// Number of largest-eps points excluded from the fit as pre-asymptotic.
    pub skip_largest: usize,
    pub notes: Vec<String>,
}

impl RateStudy {
    pub fn new(label: impl Into<String>, predicted_slope: Option<f64>) -> Self {
        RateStudy {
            label: label.into(),
            points: Vec::new(),
            predicted_slope,
            fitted_slope: None,
            fit_r2: None,
            skip_largest: 0,
            notes: Vec::new(),
        }
    }

    pub fn push(&mut self, eps: f64, norm: f64) {
        self.points.push(RatePoint { eps, norm });
    }

    /// Fits the decay slope on all points after dropping the
    /// `skip_largest` largest eps values.
    pub fn fit(&mut self, skip_largest: usize) {
        self.skip_largest = skip_largest.min(self.points.len().saturating_sub(2));
        let mut pts: Vec<(f64, f64)> = self.points.iter().map(|p| (p.eps, p.norm)).collect();
        pts.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
        let kept = &pts[self.skip_largest..];
        if let Some(f) = loglog_fit(kept) {
            self.fitted_slope = Some(f.slope);
            self.fit_r2 = Some(f.r2);
        }
    }

    pub fn csv_header() -> &'static str {
        "label,eps,norm,predicted_slope,fitted_slope,r2\n"
    }

    pub fn csv_rows(&self) -> String {
        let fmt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
        let mut out = String::new();
        for p in &self.points {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                self.label,
                p.eps,
                p.norm,
                fmt(self.predicted_slope),
                fmt(self.fitted_slope),
                fmt(self.fit_r2)
            ));
        }
        out
    }

    /// Concatenates several studies into one CSV document.
    pub fn csv_table(studies: &[RateStudy]) -> String {
        let mut out = String::from(Self::csv_header());
        for s in studies {
            out.push_str(&s.csv_rows());
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_pass_is_conjunction() {
        let mut r = ResidualReport::new("t");
        r.push(ResidualItem::equality("a", vec![], 1e-9, 1e-6));
        assert!(r.pass);
        r.push(ResidualItem::equality("b", vec![], 2e-6, 1e-6));
        assert!(!r.pass);
    }

    #[test]
    fn rate_study_fit_skips_largest() {
        let mut s = RateStudy::new("w", Some(0.5));
        // First two points off-trend, remaining on x^0.5.
        s.push(0.5, 10.0);
        s.push(0.25, 9.0);
        for k in 2..9 {
            let e = 0.5f64.powi(k + 1);
            s.push(e, 2.0 * e.sqrt());
        }
        s.fit(2);
        assert!((s.fitted_slope.unwrap() - 0.5).abs() < 1e-9);
        assert!(s.fit_r2.unwrap() > 0.999999);
    }

    #[test]
    fn csv_is_deterministic() {
        let mut s = RateStudy::new("q", None);
        s.push(0.1, 1.0);
        s.fit(0);
        assert_eq!(RateStudy::csv_table(&[s.clone()]), RateStudy::csv_table(&[s]));
    }
}

//! Bound coefficients, the best-known-length registry and table output.

mod registry;
mod tables;

use thiserror::Error;

pub use registry::{merge_best_known, CodeRecord, Registry};
pub use tables::{emit_plot_data, emit_table, Figure, Series, TableShape};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReportError {
    #[error("bounds are defined for r in {{4, 5}} with R = 3, got r = {r}, R = {radius}")]
    UnsupportedShape { r: usize, radius: usize },
    #[error("conflicting records for the same run: {0}")]
    ConflictingRecord(String),
    #[error("no records in the requested range")]
    MissingRange,
    #[error("registry csv: {0}")]
    Csv(String),
}

/// `(ln q)^(1/3) · q^((r-R)/R)`, the growth the lengths are compared with.
pub fn bound_scale(q: u64, r: usize, radius: usize) -> f64 {
    let q = q as f64;
    q.ln().cbrt() * q.powf((r as f64 - radius as f64) / radius as f64)
}

/// Constant of the lexi-bound: 2.8 for r = 4, 3 for r = 5.
pub fn bound_constant(r: usize) -> Option<f64> {
    match r {
        4 => Some(2.8),
        5 => Some(3.0),
        _ => None,
    }
}

fn check_shape(r: usize, radius: usize) -> Result<f64, ReportError> {
    match bound_constant(r) {
        Some(c) if radius == 3 => Ok(c),
        _ => Err(ReportError::UnsupportedShape { r, radius }),
    }
}

/// Length relative to the lexi-bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundCoefficients {
    /// `n / ((ln q)^(1/3) q^((r-3)/3))`.
    pub c: f64,
    /// The lexi-bound value `constant · scale`.
    pub bound: f64,
    /// `bound - n`.
    pub delta: f64,
    /// `delta / bound · 100`.
    pub delta_pct: f64,
}

pub fn coefficients(q: u64, r: usize, radius: usize, n: usize) -> Result<BoundCoefficients, ReportError> {
    let constant = check_shape(r, radius)?;
    let scale = bound_scale(q, r, radius);
    let bound = constant * scale;
    let delta = bound - n as f64;
    Ok(BoundCoefficients {
        c: n as f64 / scale,
        bound,
        delta,
        delta_pct: delta / bound * 100.0,
    })
}

pub fn coefficient(record: &CodeRecord) -> Result<BoundCoefficients, ReportError> {
    coefficients(record.q, record.r, record.radius, record.n)
}

/// Outcome of comparing a length with the lexi-bound and the refined
/// constants for best-known lengths.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundCheck {
    /// `n < constant · scale`.
    pub holds: bool,
    /// `q` lies in the range where the lexi-bound is claimed.
    pub in_range: bool,
    /// Refined constant for this `q`, if `q` is in one of its ranges.
    pub refined_constant: Option<f64>,
    pub refined_holds: Option<bool>,
}

pub fn lexi_bound_check(record: &CodeRecord) -> Result<BoundCheck, ReportError> {
    let (q, r, n) = (record.q, record.r, record.n as f64);
    let constant = check_shape(r, record.radius)?;
    let scale = bound_scale(q, r, 3);
    let in_range = match r {
        4 => (11..=6361).contains(&q) && q != 6241,
        _ => (37..=797).contains(&q),
    };
    let refined_constant = match r {
        4 if (13..=4373).contains(&q) => Some(2.61),
        4 if q > 4373 && q <= 6361 && q != 6241 => Some(2.66),
        5 if (11..=401).contains(&q) => Some(2.785),
        5 if q > 401 && q <= 797 => Some(2.884),
        _ => None,
    };
    Ok(BoundCheck {
        holds: n < constant * scale,
        in_range,
        refined_constant,
        refined_holds: refined_constant.map(|k| n < k * scale),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::Algorithm;

    fn rec(q: u64, r: usize, n: usize) -> CodeRecord {
        CodeRecord {
            q,
            r,
            radius: 3,
            n,
            d: Some(5),
            algorithm: Algorithm::Lexi,
            seed: None,
            polynomial: None,
            verified: true,
        }
    }

    #[test]
    fn coefficient_for_q11() {
        let c = coefficient(&rec(11, 4, 8)).unwrap();
        let oracle = 8.0 / (11.0 * 11f64.ln()).powf(1.0 / 3.0);
        assert!((c.c - oracle).abs() < 1e-12);
        assert!((c.c - 2.687).abs() < 1e-3);
        assert!(c.c < 2.8);
    }

    #[test]
    fn delta_pct_identity() {
        for (q, r, n) in [(11, 4, 8), (199, 4, 26), (37, 5, 51), (49, 5, 61), (6361, 4, 99)] {
            let c = coefficient(&rec(q, r, n)).unwrap();
            let k = bound_constant(r).unwrap();
            assert!((c.delta_pct - (1.0 - c.c / k) * 100.0).abs() < 1e-9);
            let back = c.c * bound_scale(q, r, 3);
            assert!((back - n as f64).abs() / n as f64 <= 1e-9);
        }
    }

    #[test]
    fn bound_checks() {
        let c = lexi_bound_check(&rec(11, 4, 8)).unwrap();
        assert!(c.holds && c.in_range);
        let c = lexi_bound_check(&rec(13, 4, 8)).unwrap();
        assert_eq!(c.refined_constant, Some(2.61));
        assert_eq!(c.refined_holds, Some(true));
        let c = lexi_bound_check(&rec(5, 4, 6)).unwrap();
        assert!(!c.in_range);
        let c = lexi_bound_check(&rec(37, 5, 51)).unwrap();
        assert!(c.holds && c.in_range);
        assert_eq!(c.refined_constant, Some(2.785));
        let mut bad = rec(11, 3, 5);
        assert!(matches!(
            lexi_bound_check(&bad),
            Err(ReportError::UnsupportedShape { .. })
        ));
        bad.r = 4;
        bad.radius = 2;
        assert!(coefficient(&bad).is_err());
    }
}

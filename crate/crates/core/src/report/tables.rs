use std::collections::BTreeSet;
use std::fmt::Write;

use super::{coefficients, bound_constant, CodeRecord, Registry, ReportError};
use crate::construct::Algorithm;

/// Layout of a length table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableShape {
    /// Leximatrix lengths, r = 4.
    Table1,
    /// Leximatrix lengths, r = 5.
    Table2,
    /// Inverse leximatrix lengths, r = 4, with a better-than-leximatrix flag.
    Table3,
    /// Shortest known with d = 5, r = 4.
    Table4,
    /// Shortest known, r = 5.
    Table5,
}

/// Which lengths a plot series uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Series {
    Lexi,
    InvLexi,
    /// Shortest known; for r = 4 restricted to d = 5.
    Best,
}

/// What a plot data file is meant for. All files carry the same columns.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    Sizes,
    Delta,
    DeltaPct,
    Coeff,
}

impl Figure {
    fn name(self) -> &'static str {
        match self {
            Figure::Sizes => "sizes",
            Figure::Delta => "delta",
            Figure::DeltaPct => "delta_pct",
            Figure::Coeff => "coeff",
        }
    }
}

fn field_orders(reg: &Registry, r: usize, range: Option<(u64, u64)>) -> Vec<u64> {
    let set: BTreeSet<u64> = reg
        .journal()
        .iter()
        .filter(|rec| rec.r == r && rec.radius == 3)
        .map(|rec| rec.q)
        .filter(|&q| range.is_none_or(|(lo, hi)| lo <= q && q <= hi))
        .collect();
    set.into_iter().collect()
}

fn series_record(reg: &Registry, q: u64, r: usize, series: Series) -> Option<&CodeRecord> {
    match series {
        Series::Lexi => reg.best_by_algorithm(q, r, 3, Algorithm::Lexi),
        Series::InvLexi => reg.best_by_algorithm(q, r, 3, Algorithm::InvLexi),
        Series::Best if r == 4 => reg.best_with_distance(q, r, 3, 5),
        Series::Best => reg.best(q, r, 3),
    }
}

/// CSV rows `q,n` (plus `better` for [`TableShape::Table3`]) in ascending `q`.
pub fn emit_table(
    reg: &Registry,
    shape: TableShape,
    range: Option<(u64, u64)>,
) -> Result<String, ReportError> {
    let (r, series) = match shape {
        TableShape::Table1 => (4, Series::Lexi),
        TableShape::Table2 => (5, Series::Lexi),
        TableShape::Table3 => (4, Series::InvLexi),
        TableShape::Table4 => (4, Series::Best),
        TableShape::Table5 => (5, Series::Best),
    };
    let mut out = String::from(if shape == TableShape::Table3 {
        "q,n,better\n"
    } else {
        "q,n\n"
    });
    let mut rows = 0;
    for q in field_orders(reg, r, range) {
        let Some(rec) = series_record(reg, q, r, series) else {
            continue;
        };
        rows += 1;
        if shape == TableShape::Table3 {
            let better = series_record(reg, q, r, Series::Lexi).is_some_and(|l| rec.n < l.n);
            writeln!(out, "{q},{},{}", rec.n, better as u8).unwrap();
        } else {
            writeln!(out, "{q},{}", rec.n).unwrap();
        }
    }
    if rows == 0 {
        return Err(ReportError::MissingRange);
    }
    Ok(out)
}

/// Whitespace-separated columns `q n bound delta delta_pct coeff`.
pub fn emit_plot_data(
    reg: &Registry,
    figure: Figure,
    r: usize,
    series: Series,
    range: Option<(u64, u64)>,
) -> Result<String, ReportError> {
    if bound_constant(r).is_none() {
        return Err(ReportError::UnsupportedShape { r, radius: 3 });
    }
    let mut out = format!("# figure {} r={r}\n# q n bound delta delta_pct coeff\n", figure.name());
    let mut rows = 0;
    for q in field_orders(reg, r, range) {
        let Some(rec) = series_record(reg, q, r, series) else {
            continue;
        };
        let c = coefficients(q, r, 3, rec.n)?;
        rows += 1;
        writeln!(
            out,
            "{q} {} {:.6} {:.6} {:.6} {:.6}",
            rec.n, c.bound, c.delta, c.delta_pct, c.c
        )
        .unwrap();
    }
    if rows == 0 {
        return Err(ReportError::MissingRange);
    }
    Ok(out)
}

//! Leading leximatrix columns for large q, and how they settle as q grows.
//!
//! The first k columns only depend on coverage of the points that precede
//! them in lexicographic order. For k around 20 these all have `x1 = 0`, or
//! `x1 = 1` with a small `x2`, so the scan tracks a window of ranks below
//! `offset + K·q^(r-2)` and finds, on each line, just the points whose ratio
//! `x2/x1` is below K. K doubles until the prefix fits in the window.

use rayon::prelude::*;

use super::ConstructError;
use crate::coverage::{for_each_cover, CoverageError, PointSet, MAX_RADIUS};
use crate::fixtures::stable_prefix_rows;
use crate::gf::{with_arith, Arith, FieldSpec};
use crate::pg::{with_dim, Column, Grid, PgError, ProjectiveSpace};

const INITIAL_WINDOW: u64 = 8;

/// The first `k` leximatrix columns, or all of them if there are fewer.
pub fn leximatrix_prefix(
    field: &FieldSpec,
    r: usize,
    radius: usize,
    k: usize,
) -> Result<Vec<Column>, ConstructError> {
    if radius == 0 || radius > MAX_RADIUS {
        return Err(CoverageError::UnsupportedRadius(radius).into());
    }
    if r < 2 {
        return Err(CoverageError::Pg(PgError::UnsupportedCodimension(r)).into());
    }
    let space = ProjectiveSpace::new(field, r).map_err(CoverageError::Pg)?;
    let q = field.q() as u64;
    let n = space.point_count();
    let head = space.rank(&Column::from_raw({
        let mut v = vec![0; r];
        v[0] = 1;
        v
    }));
    let slab = q.pow(r as u32 - 2);
    let mut ratio = INITIAL_WINDOW.min(q);
    loop {
        let window = if ratio >= q { n } else { head + ratio * slab };
        let found = with_arith!(field, |a| with_dim!(r, |D| {
            windowed_scan::<_, D>(a, &space, radius, k, window, ratio)
        }));
        if let Some(cols) = found {
            return Ok(cols);
        }
        ratio = (ratio * 2).min(q);
    }
}

/// Runs the scan inside a rank window; `None` if the window ran out first.
fn windowed_scan<A: Arith, const D: usize>(
    a: &A,
    space: &ProjectiveSpace,
    radius: usize,
    k: usize,
    window: u64,
    ratio: u64,
) -> Option<Vec<Column>> {
    let grid = space.grid::<D>();
    let full = window == space.point_count();
    let mut bits = PointSet::new(window);
    let mut hs: Vec<[u32; D]> = Vec::new();
    let mut cursor = 0;
    while hs.len() < k {
        let Some(p) = bits.next_absent(cursor) else {
            return full.then(|| done(hs));
        };
        let v = space.unrank(p).to_array::<D>();
        let mut mark = |x: u64| {
            if x < window {
                bits.insert(x);
            }
        };
        if full || radius < 3 {
            for_each_cover(a, &grid, &v, &hs, radius, &mut mark);
        } else {
            for_each_cover(a, &grid, &v, &hs, 2, &mut mark);
            for j in 1..hs.len() {
                for i in 0..j {
                    a.for_each_line_point(&v, &hs[i], |w| {
                        line_in_window(a, &grid, w, &hs[j], ratio as u32, &mut mark)
                    });
                }
            }
        }
        hs.push(v);
        cursor = p + 1;
    }
    Some(done(hs))
}

fn done<const D: usize>(hs: Vec<[u32; D]>) -> Vec<Column> {
    hs.into_iter().map(|v| Column::from_raw(v.to_vec())).collect()
}

/// Visits the points `w + d·h`, `d ≠ 0`, that have `x1 = 0` or
/// `x2/x1 < ratio`.
#[inline(always)]
fn line_in_window<A: Arith, const D: usize>(
    a: &A,
    grid: &Grid<D>,
    w: &[u32; D],
    h: &[u32; D],
    ratio: u32,
    mark: &mut impl FnMut(u64),
) {
    let (a1, a2, g1, g2) = (w[0], w[1], h[0], h[1]);
    let visit = |d: u32, mark: &mut dyn FnMut(u64)| {
        if let Some(x) = grid.rank_of(a, &a.axpy(w, d, h)) {
            mark(x);
        }
    };
    if g1 == 0 {
        if a1 == 0 {
            // the whole line lies in x1 = 0
            a.for_each_line_point(w, h, |p| {
                if let Some(x) = grid.rank_of(a, p) {
                    mark(x);
                }
            });
            return;
        }
    } else {
        let d0 = a.mul(a.neg(a1), a.inv(g1));
        if d0 != 0 {
            visit(d0, mark);
        }
    }
    for s in 0..ratio {
        // x2 = s·x1  <=>  d·(g2 - s·g1) = s·a1 - a2
        let num = a.add(a.mul(s, a1), a.neg(a2));
        let den = a.add(g2, a.neg(a.mul(s, g1)));
        if den != 0 {
            let d = a.mul(num, a.inv(den));
            if d != 0 && a.add(a1, a.mul(d, g1)) != 0 {
                visit(d, mark);
            }
        } else if num == 0 {
            a.for_each_line_point(w, h, |p| {
                if p[0] != 0 {
                    if let Some(x) = grid.rank_of(a, p) {
                        mark(x);
                    }
                }
            });
        }
    }
}

/// One row of a prefix stability report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixRow {
    /// 1-based column position.
    pub v: usize,
    /// Column at the largest tested q.
    pub column: Option<Column>,
    /// Smallest tested q from which the column no longer changes.
    pub q0: Option<u64>,
    /// Agreement with the shipped r = 4, R = 3 reference table, where it
    /// applies.
    pub matches_reference: Option<bool>,
}

/// For each of the first `k` positions, the settled column over the tested
/// field orders (ascending) and where it settles.
pub fn stable_prefix(
    r: usize,
    radius: usize,
    k: usize,
    orders: &[u64],
) -> Result<Vec<PrefixRow>, crate::Error> {
    let fields = orders
        .iter()
        .map(|&q| FieldSpec::from_order(q, None))
        .collect::<Result<Vec<_>, _>>()?;
    let prefixes = fields
        .par_iter()
        .map(|f| leximatrix_prefix(f, r, radius, k))
        .collect::<Result<Vec<_>, _>>()?;
    let reference = (r == 4 && radius == 3).then(stable_prefix_rows);
    Ok((0..k)
        .map(|i| {
            let at = |j: usize| prefixes[j].get(i).map(|c| c.coords().to_vec());
            let last = orders.len().checked_sub(1);
            let column = last.and_then(at);
            let q0 = column.as_ref().map(|fin| {
                let mut from = orders.len() - 1;
                while from > 0 && at(from - 1).as_ref() == Some(fin) {
                    from -= 1;
                }
                orders[from]
            });
            let matches_reference = reference
                .and_then(|rows| rows.get(i))
                .zip(column.as_ref())
                .map(|(row, c)| row.column[..] == c[..]);
            PrefixRow {
                v: i + 1,
                column: column.map(Column::from_raw),
                q0,
                matches_reference,
            }
        })
        .collect())
}

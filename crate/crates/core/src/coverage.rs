//! Incremental R-coverage of PG(r-1, q) by a growing set of columns.
//!
//! A point is R-covered when it is a linear combination of at most R chosen
//! columns. Adding a column `c` only needs the combinations that involve `c`
//! with coefficient 1: `c`, `c + d·h` and `c + b·h_i + d·h_j` over the
//! columns `h` already present and nonzero scalars `b`, `d`.

use std::collections::HashSet;

use rayon::prelude::*;
use thiserror::Error;

use crate::gf::{with_arith, Arith, FieldSpec};
use crate::pg::{normalize, with_dim, Column, Grid, PgError, ProjectiveSpace};

/// Largest covering radius handled by the engine.
pub const MAX_RADIUS: usize = 3;

/// Spaces up to this many points use an epoch-stamp array in [`GainScratch`].
const STAMP_LIMIT: u64 = 1 << 22;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverageError {
    #[error("covering radius {0} is not supported (1..=3)")]
    UnsupportedRadius(usize),
    #[error("column {0} is already in the matrix")]
    DuplicateColumn(Column),
    #[error("column has {got} coordinates, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("column {0} has a label outside the field")]
    ForeignColumn(Column),
    #[error(transparent)]
    Pg(#[from] PgError),
}

/// A set of projective points stored as a bitmap over their ranks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    words: Vec<u64>,
    len: u64,
}

impl PointSet {
    pub fn new(len: u64) -> Self {
        PointSet {
            words: vec![0; len.div_ceil(64) as usize],
            len,
        }
    }

    /// Number of addressable points.
    pub fn capacity(&self) -> u64 {
        self.len
    }

    #[inline(always)]
    pub fn contains(&self, k: u64) -> bool {
        self.words[(k >> 6) as usize] >> (k & 63) & 1 == 1
    }

    /// Inserts `k`, returning whether it was absent.
    #[inline(always)]
    pub fn insert(&mut self, k: u64) -> bool {
        let w = &mut self.words[(k >> 6) as usize];
        let m = 1u64 << (k & 63);
        let fresh = *w & m == 0;
        *w |= m;
        fresh
    }

    /// Smallest absent rank at or after `from`.
    pub fn next_absent(&self, from: u64) -> Option<u64> {
        if from >= self.len {
            return None;
        }
        let mut i = (from >> 6) as usize;
        let mut free = !self.words[i] & (!0u64 << (from & 63));
        loop {
            if free != 0 {
                let k = ((i as u64) << 6) + free.trailing_zeros() as u64;
                return (k < self.len).then_some(k);
            }
            i += 1;
            if i == self.words.len() {
                return None;
            }
            free = !self.words[i];
        }
    }

    /// Largest absent rank at or before `from`.
    pub fn prev_absent(&self, from: u64) -> Option<u64> {
        let from = from.min(self.len.checked_sub(1)?);
        let mut i = (from >> 6) as usize;
        let shift = 63 - (from & 63);
        let mut free = (!self.words[i] << shift) >> shift;
        loop {
            if free != 0 {
                return Some(((i as u64) << 6) + 63 - free.leading_zeros() as u64);
            }
            if i == 0 {
                return None;
            }
            i -= 1;
            free = !self.words[i];
        }
    }

    pub fn count(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn is_full(&self) -> bool {
        self.count() == self.len
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.len).filter(|&k| self.contains(k))
    }

    /// Ranks not in the set, ascending.
    pub fn complement(&self) -> impl Iterator<Item = u64> + '_ {
        self.words.iter().enumerate().flat_map(move |(i, &w)| {
            let base = (i as u64) << 6;
            let mut free = !w;
            if base + 64 > self.len {
                free &= (1u64 << (self.len - base)) - 1;
            }
            std::iter::from_fn(move || {
                (free != 0).then(|| {
                    let b = free.trailing_zeros() as u64;
                    free &= free - 1;
                    base + b
                })
            })
        })
    }
}

/// Reusable buffers for [`CoverageState::gain_with`].
#[derive(Debug, Default, Clone)]
pub struct GainScratch {
    stamp: Vec<u32>,
    epoch: u32,
    hits: Vec<u64>,
}

impl GainScratch {
    pub fn new() -> Self {
        Self::default()
    }
}

/// Which points the current columns R-cover.
#[derive(Debug, Clone)]
pub struct CoverageState {
    field: FieldSpec,
    space: ProjectiveSpace,
    radius: usize,
    columns: Vec<Column>,
    /// Columns flattened row by row for the kernels.
    flat: Vec<u32>,
    ranks: HashSet<u64>,
    covered: PointSet,
    covered_count: u64,
}

impl CoverageState {
    pub fn new(field: &FieldSpec, r: usize, radius: usize) -> Result<Self, CoverageError> {
        if radius == 0 || radius > MAX_RADIUS {
            return Err(CoverageError::UnsupportedRadius(radius));
        }
        if r < 2 {
            return Err(PgError::UnsupportedCodimension(r).into());
        }
        let space = ProjectiveSpace::new(field, r)?;
        Ok(CoverageState {
            field: field.clone(),
            covered: PointSet::new(space.point_count()),
            space,
            radius,
            columns: Vec::new(),
            flat: Vec::new(),
            ranks: HashSet::new(),
            covered_count: 0,
        })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn codimension(&self) -> usize {
        self.space.codimension()
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn space(&self) -> &ProjectiveSpace {
        &self.space
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    pub fn covered(&self) -> &PointSet {
        &self.covered
    }

    pub fn point_count(&self) -> u64 {
        self.space.point_count()
    }

    pub fn covered_count(&self) -> u64 {
        self.covered_count
    }

    pub fn uncovered_count(&self) -> u64 {
        self.point_count() - self.covered_count
    }

    pub fn is_complete(&self) -> bool {
        self.covered_count == self.point_count()
    }

    pub fn is_covered(&self, c: &Column) -> bool {
        self.covered.contains(self.space.rank(c))
    }

    pub fn contains_column(&self, c: &Column) -> bool {
        self.ranks.contains(&self.space.rank(c))
    }

    pub(crate) fn contains_rank(&self, k: u64) -> bool {
        self.ranks.contains(&k)
    }

    fn check(&self, c: &Column) -> Result<u64, CoverageError> {
        let r = self.codimension();
        if c.len() != r {
            return Err(CoverageError::DimensionMismatch {
                expected: r,
                got: c.len(),
            });
        }
        if !c.coords().iter().all(|&x| self.field.contains(x)) {
            return Err(CoverageError::ForeignColumn(c.clone()));
        }
        let k = self.space.rank(c);
        if self.ranks.contains(&k) {
            return Err(CoverageError::DuplicateColumn(c.clone()));
        }
        Ok(k)
    }

    /// Appends `c` and returns how many points became covered.
    pub fn add_column(&mut self, c: Column) -> Result<u64, CoverageError> {
        let k = self.check(&c)?;
        let (field, space, radius) = (&self.field, &self.space, self.radius);
        let (covered, flat) = (&mut self.covered, &self.flat);
        let mut fresh = 0u64;
        with_arith!(field, |a| with_dim!(space.codimension(), |D| {
            let grid = space.grid::<D>();
            let v = c.to_array::<D>();
            let hs = flat.as_chunks::<D>().0;
            for_each_cover(a, &grid, &v, hs, radius, |p| {
                fresh += covered.insert(p) as u64;
            });
        }));
        self.covered_count += fresh;
        self.ranks.insert(k);
        self.flat.extend_from_slice(c.coords());
        self.columns.push(c);
        Ok(fresh)
    }

    /// Number of points `add_column(c)` would newly cover.
    pub fn gain(&self, c: &Column) -> Result<u64, CoverageError> {
        self.gain_with(c, &mut GainScratch::new())
    }

    pub fn gain_with(&self, c: &Column, scratch: &mut GainScratch) -> Result<u64, CoverageError> {
        self.check(c)?;
        let covered = &self.covered;
        let hits = &mut scratch.hits;
        hits.clear();
        with_arith!(self.field, |a| with_dim!(self.codimension(), |D| {
            let grid = self.space.grid::<D>();
            let v = c.to_array::<D>();
            let hs = self.flat.as_chunks::<D>().0;
            for_each_cover(a, &grid, &v, hs, self.radius, |p| {
                if !covered.contains(p) {
                    hits.push(p);
                }
            });
        }));
        if hits.len() <= 1 {
            return Ok(hits.len() as u64);
        }
        let n = self.point_count();
        if n <= STAMP_LIMIT {
            if scratch.stamp.len() != n as usize {
                scratch.stamp = vec![0; n as usize];
                scratch.epoch = 0;
            }
            scratch.epoch = scratch.epoch.wrapping_add(1);
            if scratch.epoch == 0 {
                scratch.stamp.fill(0);
                scratch.epoch = 1;
            }
            let e = scratch.epoch;
            let mut count = 0;
            for &p in hits.iter() {
                let s = &mut scratch.stamp[p as usize];
                if *s != e {
                    *s = e;
                    count += 1;
                }
            }
            Ok(count)
        } else {
            hits.sort_unstable();
            hits.dedup();
            Ok(hits.len() as u64)
        }
    }

    /// Gains of every point at once, indexed by rank.
    ///
    /// Each uncovered point `u` votes for every `c` with `u` in the cover of
    /// `c`, which is the set `u`, `u + d·h`, `u + b·h_i + d·h_j` again. Cost
    /// is about `uncovered · C(n, 2) · q²`.
    pub fn all_gains(&self) -> Vec<u32> {
        let n = self.point_count() as usize;
        let uncovered: Vec<u64> = self.covered.complement().collect();
        with_arith!(self.field, |a| with_dim!(self.codimension(), |D| {
            let grid = self.space.grid::<D>();
            let hs = self.flat.as_chunks::<D>().0;
            let radius = self.radius;
            let space = &self.space;
            uncovered
                .par_chunks(256)
                .fold(
                    || (vec![0u32; n], vec![0u32; n], 0u32),
                    |(mut counts, mut stamp, mut epoch), chunk| {
                        for &u in chunk {
                            epoch += 1;
                            let v = space.unrank(u).to_array::<D>();
                            for_each_cover(a, &grid, &v, hs, radius, |p| {
                                let s = &mut stamp[p as usize];
                                if *s != epoch {
                                    *s = epoch;
                                    counts[p as usize] += 1;
                                }
                            });
                        }
                        (counts, stamp, epoch)
                    },
                )
                .map(|(counts, _, _)| counts)
                .reduce_with(|mut x, y| {
                    x.iter_mut().zip(&y).for_each(|(a, b)| *a += b);
                    x
                })
                .unwrap_or_else(|| vec![0; n])
        }))
    }

    /// Rough number of kernel visits for one [`all_gains`](Self::all_gains).
    pub fn all_gains_cost(&self) -> u64 {
        let n = self.columns.len() as u64;
        let q = self.field.q() as u64;
        let per = match self.radius {
            1 => 1,
            2 => 1 + n * q,
            _ => 1 + n * q + n * n.saturating_sub(1) / 2 * q * q,
        };
        self.uncovered_count().saturating_mul(per)
    }
}

/// Visits the rank of every point `v`, `v + d·h` (R ≥ 2) and
/// `v + b·h_i + d·h_j` (R ≥ 3) with `b, d ≠ 0`. Points may repeat.
#[inline(always)]
pub(crate) fn for_each_cover<A: Arith, const D: usize>(
    a: &A,
    grid: &Grid<D>,
    v: &[u32; D],
    hs: &[[u32; D]],
    radius: usize,
    mut visit: impl FnMut(u64),
) {
    visit(grid.rank_normalized(v));
    if radius >= 2 {
        for h in hs {
            a.for_each_line_point(v, h, |p| {
                if let Some(k) = grid.rank_of(a, p) {
                    visit(k)
                }
            });
        }
    }
    if radius >= 3 {
        for j in 1..hs.len() {
            let hj = &hs[j];
            for hi in &hs[..j] {
                a.for_each_line_point(v, hi, |w| {
                    a.for_each_line_point(w, hj, |p| {
                        if let Some(k) = grid.rank_of(a, p) {
                            visit(k)
                        }
                    })
                });
            }
        }
    }
}

/// Coverage recomputed from scratch: every combination of at most `radius`
/// columns, first coefficient 1 and the rest nonzero. Slow; for checking.
pub fn brute_force_covered(
    columns: &[Column],
    field: &FieldSpec,
    r: usize,
    radius: usize,
) -> Result<PointSet, PgError> {
    let space = ProjectiveSpace::new(field, r)?;
    let mut set = PointSet::new(space.point_count());
    let q = field.q();
    let n = columns.len();
    let mut subset: Vec<usize> = Vec::new();
    for size in 1..=radius.min(n) {
        subset.clear();
        subset.extend(0..size);
        let tuples = ((q - 1) as u64).pow(size as u32 - 1);
        loop {
            for t in 0..tuples {
                let mut v = columns[subset[0]].coords().to_vec();
                let mut rest = t;
                for &i in &subset[1..] {
                    let b = (rest % (q - 1) as u64) as u32 + 1;
                    rest /= (q - 1) as u64;
                    for (x, &h) in v.iter_mut().zip(columns[i].coords()) {
                        *x = field.add_label(*x, field.mul_label(b, h));
                    }
                }
                if let Ok(p) = normalize(&v, field) {
                    set.insert(space.rank(&p));
                }
            }
            if !next_subset(&mut subset, n) {
                break;
            }
        }
    }
    Ok(set)
}

/// Advances a sorted index subset of `0..n` to the next one in lex order.
pub(crate) fn next_subset(s: &mut [usize], n: usize) -> bool {
    let k = s.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if s[i] < n - k + i {
            s[i] += 1;
            for j in i + 1..k {
                s[j] = s[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

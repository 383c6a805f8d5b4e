//! Points of PG(r-1, q) as normalized columns, their lexicographic and
//! inverse lexicographic orders, and a dense rank for bitmap addressing.

use std::fmt;

use thiserror::Error;

use crate::gf::{Arith, FieldSpec};

/// Largest supported codimension.
pub const MAX_CODIMENSION: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PgError {
    #[error("the zero vector is not a projective point")]
    ZeroVector,
    #[error("expected {expected} coordinates, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("label {label} is not an element of GF({q})")]
    LabelOutOfField { label: u32, q: u32 },
    #[error("leftmost nonzero coordinate must be 1")]
    NotNormalized,
    #[error("codimension {0} is outside 1..={MAX_CODIMENSION}")]
    UnsupportedCodimension(usize),
    #[error("PG({}, {q}) has too many points to index", r - 1)]
    TooManyPoints { q: u32, r: usize },
}

/// A nonzero column whose leftmost nonzero label is 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Column(Vec<u32>);

impl Column {
    /// Wraps coordinates that are already normalized.
    pub fn new(coords: Vec<u32>, field: &FieldSpec) -> Result<Self, PgError> {
        check_labels(&coords, field)?;
        match coords.iter().find(|&&x| x != 0) {
            None => Err(PgError::ZeroVector),
            Some(1) => Ok(Column(coords)),
            Some(_) => Err(PgError::NotNormalized),
        }
    }

    pub(crate) fn from_raw(coords: Vec<u32>) -> Self {
        debug_assert_eq!(coords.iter().find(|&&x| x != 0), Some(&1));
        Column(coords)
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Position of the leading 1.
    pub fn lead(&self) -> usize {
        self.0.iter().position(|&x| x != 0).unwrap()
    }

    pub(crate) fn to_array<const D: usize>(&self) -> [u32; D] {
        let mut out = [0u32; D];
        out.copy_from_slice(&self.0);
        out
    }
}

impl fmt::Display for Column {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

fn check_labels(v: &[u32], field: &FieldSpec) -> Result<(), PgError> {
    match v.iter().find(|&&x| !field.contains(x)) {
        Some(&label) => Err(PgError::LabelOutOfField {
            label,
            q: field.q(),
        }),
        None => Ok(()),
    }
}

/// Scan order over the columns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ColumnOrder {
    /// Ascending `Σ x_u q^(r-u)`.
    Lex,
    /// Ascending `(q^r-1)/(q-1) - Σ x_u q^(r-u)`, i.e. descending lex.
    InvLex,
}

/// Scales `v` so that its leftmost nonzero coordinate is 1.
pub fn normalize(v: &[u32], field: &FieldSpec) -> Result<Column, PgError> {
    check_labels(v, field)?;
    let lead = v.iter().copied().find(|&x| x != 0).ok_or(PgError::ZeroVector)?;
    if lead == 1 {
        return Ok(Column(v.to_vec()));
    }
    let s = field.inv_label(lead);
    Ok(Column(v.iter().map(|&x| field.mul_label(x, s)).collect()))
}

/// `Σ x_u q^(r-u)` with labels read as integers.
pub fn lex_index(c: &Column, field: &FieldSpec) -> u128 {
    let q = field.q() as u128;
    c.0.iter().fold(0u128, |acc, &x| acc * q + x as u128)
}

/// `(q^r-1)/(q-1) - Σ x_u q^(r-u)`. Only meaningful as a sort key; the value
/// may be negative.
pub fn invlex_index(c: &Column, field: &FieldSpec) -> i128 {
    point_count(field.q(), c.len()) as i128 - lex_index(c, field) as i128
}

/// `(q^r - 1)/(q - 1)`.
pub fn point_count(q: u32, r: usize) -> u128 {
    let q = q as u128;
    (0..r).fold(0u128, |acc, _| acc * q + 1)
}

/// Dense 0-based position of `c` in lexicographic order.
pub fn rank(c: &Column, field: &FieldSpec) -> u64 {
    let q = field.q() as u64;
    let r = c.len();
    let t = c.lead();
    let offset = (0..r - 1 - t).fold(0u64, |acc, _| acc * q + 1);
    let tail = c.0[t + 1..].iter().fold(0u64, |acc, &x| acc * q + x as u64);
    offset + tail
}

/// Every column of PG(r-1, q) in the requested order, generated lazily.
pub fn iterate_columns(
    field: &FieldSpec,
    r: usize,
    order: ColumnOrder,
) -> Result<impl Iterator<Item = Column> + '_, PgError> {
    let space = ProjectiveSpace::new(field, r)?;
    let n = space.point_count();
    let ranks: Box<dyn Iterator<Item = u64>> = match order {
        ColumnOrder::Lex => Box::new(0..n),
        ColumnOrder::InvLex => Box::new((0..n).rev()),
    };
    Ok(ranks.map(move |k| space.unrank(k)))
}

/// Rank/unrank tables for PG(r-1, q).
#[derive(Debug, Clone)]
pub struct ProjectiveSpace {
    q: u64,
    r: usize,
    /// `offsets[t]` is the rank of the first column whose leading 1 sits at
    /// position `t`.
    offsets: Vec<u64>,
    points: u64,
}

impl ProjectiveSpace {
    pub fn new(field: &FieldSpec, r: usize) -> Result<Self, PgError> {
        if r == 0 || r > MAX_CODIMENSION {
            return Err(PgError::UnsupportedCodimension(r));
        }
        let points = point_count(field.q(), r);
        if points > (1u128 << 48) {
            return Err(PgError::TooManyPoints { q: field.q(), r });
        }
        let q = field.q() as u64;
        let offsets = (0..r)
            .map(|t| (0..r - 1 - t).fold(0u64, |acc, _| acc * q + 1))
            .collect();
        Ok(ProjectiveSpace {
            q,
            r,
            offsets,
            points: points as u64,
        })
    }

    pub fn codimension(&self) -> usize {
        self.r
    }

    pub fn point_count(&self) -> u64 {
        self.points
    }

    pub fn rank(&self, c: &Column) -> u64 {
        let t = c.lead();
        self.offsets[t] + c.0[t + 1..].iter().fold(0u64, |acc, &x| acc * self.q + x as u64)
    }

    pub fn unrank(&self, k: u64) -> Column {
        assert!(k < self.points, "rank {k} out of range");
        let t = (0..self.r).find(|&t| k >= self.offsets[t]).unwrap();
        let mut tail = k - self.offsets[t];
        let mut coords = vec![0u32; self.r];
        coords[t] = 1;
        for u in (t + 1..self.r).rev() {
            coords[u] = (tail % self.q) as u32;
            tail /= self.q;
        }
        Column(coords)
    }

    pub(crate) fn grid<const D: usize>(&self) -> Grid<D> {
        assert_eq!(D, self.r);
        let mut offsets = [0u64; D];
        offsets.copy_from_slice(&self.offsets);
        Grid { q: self.q, offsets }
    }
}

/// Fixed-dimension rank computation for the coverage kernels.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Grid<const D: usize> {
    q: u64,
    offsets: [u64; D],
}

impl<const D: usize> Grid<D> {
    /// Rank of the projective point spanned by `v`, or `None` for zero.
    #[inline(always)]
    pub(crate) fn rank_of<A: Arith>(&self, a: &A, v: &[u32; D]) -> Option<u64> {
        let mut t = 0;
        while t < D && v[t] == 0 {
            t += 1;
        }
        if t == D {
            return None;
        }
        let lead = v[t];
        let mut acc = 0u64;
        if lead == 1 {
            for &x in &v[t + 1..] {
                acc = acc * self.q + x as u64;
            }
        } else {
            let s = a.inv(lead);
            for &x in &v[t + 1..] {
                acc = acc * self.q + a.mul(x, s) as u64;
            }
        }
        Some(self.offsets[t] + acc)
    }

    /// Rank of a column already known to be normalized.
    #[inline(always)]
    pub(crate) fn rank_normalized(&self, v: &[u32; D]) -> u64 {
        let mut t = 0;
        while v[t] == 0 {
            t += 1;
        }
        let mut acc = 0u64;
        for &x in &v[t + 1..] {
            acc = acc * self.q + x as u64;
        }
        self.offsets[t] + acc
    }
}

/// Runs `$body` with `$d` bound to the codimension as a `const usize`.
macro_rules! with_dim {
    ($r:expr, |$d:ident| $body:expr) => {
        match $r {
            1 => {
                const $d: usize = 1;
                $body
            }
            2 => {
                const $d: usize = 2;
                $body
            }
            3 => {
                const $d: usize = 3;
                $body
            }
            4 => {
                const $d: usize = 4;
                $body
            }
            5 => {
                const $d: usize = 5;
                $body
            }
            6 => {
                const $d: usize = 6;
                $body
            }
            7 => {
                const $d: usize = 7;
                $body
            }
            8 => {
                const $d: usize = 8;
                $body
            }
            other => unreachable!("codimension {other} rejected at construction"),
        }
    };
}
pub(crate) use with_dim;

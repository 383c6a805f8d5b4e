//! Short linear covering codes of radius 3 over GF(q).
//!
//! Parity-check matrices are built column by column from points of
//! PG(r-1, q): in lexicographic order ([`construct::leximatrix`]), in the
//! reverse order ([`construct::invleximatrix`]), or by randomized greedy search
//! ([`construct::rand_greedy`], [`construct::d_rand_greedy`]). The
//! [`coverage`] engine tracks which points are combinations of at most R
//! chosen columns; [`verify`] checks codes independently and [`report`]
//! turns lengths into bound coefficients and tables.

pub mod cli;
pub mod construct;
pub mod coverage;
pub mod fixtures;
pub mod gf;
pub mod io;
pub mod pg;
pub mod report;
pub mod verify;

pub use construct::{Algorithm, Code};
pub use coverage::CoverageState;
pub use gf::{FieldElement, FieldSpec};
pub use pg::{Column, ColumnOrder, ProjectiveSpace};

use thiserror::Error;

/// Any failure surfaced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Field(#[from] gf::FieldError),
    #[error(transparent)]
    Pg(#[from] pg::PgError),
    #[error(transparent)]
    Coverage(#[from] coverage::CoverageError),
    #[error(transparent)]
    Construct(#[from] construct::ConstructError),
    #[error(transparent)]
    Io(#[from] io::FormatError),
    #[error(transparent)]
    Report(#[from] report::ReportError),
}

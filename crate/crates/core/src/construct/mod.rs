//! Parity-check matrix constructions.

mod greedy;
mod prefix;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::coverage::{CoverageError, CoverageState};
use crate::gf::FieldSpec;
use crate::pg::{lex_index, Column, ColumnOrder};

pub use greedy::{
    d_rand_greedy, greedy_search, rand_greedy, GreedyConfig, GreedyOutcome, Schedule, StepRule,
    Variant,
};
pub use prefix::{leximatrix_prefix, stable_prefix, PrefixRow};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error(transparent)]
    Coverage(#[from] CoverageError),
    #[error("invalid start matrix: {0}")]
    InvalidStartMatrix(String),
    #[error("invalid greedy configuration: {0}")]
    InvalidConfig(String),
}

/// How a code was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Algorithm {
    Lexi,
    InvLexi,
    RandGreedy,
    DRandGreedy,
    Imported,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] = [
        Algorithm::Lexi,
        Algorithm::InvLexi,
        Algorithm::RandGreedy,
        Algorithm::DRandGreedy,
        Algorithm::Imported,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Lexi => "lexi",
            Algorithm::InvLexi => "invlexi",
            Algorithm::RandGreedy => "rand-greedy",
            Algorithm::DRandGreedy => "d-rand-greedy",
            Algorithm::Imported => "imported",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| format!("unknown algorithm {s:?}"))
    }
}

/// A parity-check matrix with its provenance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Code {
    pub field: FieldSpec,
    pub r: usize,
    pub radius: usize,
    pub columns: Vec<Column>,
    pub algorithm: Algorithm,
    pub seed: Option<u64>,
    /// Minimum distance, once known.
    pub d: Option<u32>,
}

impl Code {
    pub fn n(&self) -> usize {
        self.columns.len()
    }

    pub fn q(&self) -> u32 {
        self.field.q()
    }

    /// Coverage state of the full column set.
    pub fn coverage(&self) -> Result<CoverageState, CoverageError> {
        let mut s = CoverageState::new(&self.field, self.r, self.radius)?;
        for c in &self.columns {
            s.add_column(c.clone())?;
        }
        Ok(s)
    }
}

/// Greedy scan over the columns in lexicographic order.
pub fn leximatrix(field: &FieldSpec, r: usize, radius: usize) -> Result<Code, ConstructError> {
    scan(field, r, radius, ColumnOrder::Lex)
}

/// Greedy scan over the columns in inverse lexicographic order.
pub fn invleximatrix(field: &FieldSpec, r: usize, radius: usize) -> Result<Code, ConstructError> {
    scan(field, r, radius, ColumnOrder::InvLex)
}

fn scan(
    field: &FieldSpec,
    r: usize,
    radius: usize,
    order: ColumnOrder,
) -> Result<Code, ConstructError> {
    let mut state = CoverageState::new(field, r, radius)?;
    let last = state.point_count() - 1;
    let mut cursor = Some(match order {
        ColumnOrder::Lex => 0,
        ColumnOrder::InvLex => last,
    });
    while let Some(k) = cursor {
        let free = match order {
            ColumnOrder::Lex => state.covered().next_absent(k),
            ColumnOrder::InvLex => state.covered().prev_absent(k),
        };
        let Some(k) = free else { break };
        state.add_column(state.space().unrank(k))?;
        cursor = match order {
            ColumnOrder::Lex => (k < last).then(|| k + 1),
            ColumnOrder::InvLex => k.checked_sub(1),
        };
    }
    debug_assert!(state.is_complete());
    let columns = state.columns().to_vec();
    debug_assert!(columns.windows(2).all(|w| {
        let (a, b) = (lex_index(&w[0], field), lex_index(&w[1], field));
        match order {
            ColumnOrder::Lex => a < b,
            ColumnOrder::InvLex => a > b,
        }
    }));
    Ok(Code {
        field: field.clone(),
        r,
        radius,
        columns,
        algorithm: match order {
            ColumnOrder::Lex => Algorithm::Lexi,
            ColumnOrder::InvLex => Algorithm::InvLexi,
        },
        seed: None,
        d: None,
    })
}

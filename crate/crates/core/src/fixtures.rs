//! Reference data: default primitive polynomials, published code lengths
//! and the stable leximatrix prefix for r = 4.

use std::collections::BTreeMap;
use std::sync::OnceLock;

/// Default primitive polynomials for non-prime `q`, coefficients constant
/// term first.
pub const PRIMITIVE_POLYNOMIALS: &[(u64, &[u32])] = &[
    (4, &[1, 1, 1]),
    (8, &[1, 1, 0, 1]),
    (9, &[2, 2, 1]),
    (16, &[1, 0, 0, 1, 1]),
    (25, &[2, 1, 1]),
    (27, &[1, 1, 2, 1]),
    (32, &[1, 0, 0, 1, 0, 1]),
    (49, &[3, 1, 1]),
    (64, &[1, 1, 0, 1, 1, 0, 1]),
    (81, &[2, 1, 0, 0, 1]),
    (121, &[2, 4, 1]),
    (125, &[2, 3, 0, 1]),
    (128, &[1, 1, 0, 0, 0, 0, 0, 1]),
    (169, &[2, 1, 1]),
    (243, &[1, 2, 0, 0, 0, 1]),
    (256, &[1, 0, 1, 1, 1, 0, 0, 0, 1]),
    (289, &[3, 1, 1]),
    (343, &[2, 3, 0, 1]),
    (361, &[2, 1, 1]),
    (512, &[1, 0, 0, 0, 1, 0, 0, 0, 0, 1]),
    (529, &[5, 2, 1]),
    (625, &[2, 2, 1, 0, 1]),
    (729, &[2, 1, 0, 0, 0, 0, 1]),
    (841, &[2, 24, 1]),
    (961, &[3, 29, 1]),
    (1024, &[1, 1, 1, 1, 0, 1, 1, 0, 0, 0, 1]),
    (1331, &[9, 2, 0, 1]),
    (1369, &[2, 33, 1]),
    (1681, &[6, 38, 1]),
    (1849, &[3, 1, 1]),
    (2048, &[1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2187, &[1, 2, 1, 0, 0, 0, 0, 1]),
    (2197, &[7, 0, 1, 1]),
    (2209, &[13, 1, 1]),
    (2401, &[3, 4, 5, 0, 1]),
    (2809, &[2, 49, 1]),
    (3125, &[2, 4, 0, 0, 0, 1]),
    (3481, &[2, 58, 1]),
    (3721, &[2, 60, 1]),
    (4096, &[1, 1, 1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1]),
    (4489, &[2, 63, 1]),
    (4913, &[14, 1, 0, 1]),
    (5041, &[7, 69, 1]),
    (5329, &[5, 70, 1]),
    (6241, &[3, 78, 1]),
];

pub fn default_polynomial(q: u64) -> Option<&'static [u32]> {
    PRIMITIVE_POLYNOMIALS
        .iter()
        .find(|(order, _)| *order == q)
        .map(|(_, poly)| *poly)
}

/// One row of a published length table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LengthEntry {
    pub q: u64,
    pub n: usize,
    /// Marked as shorter than the leximatrix code (inverse leximatrix table
    /// only).
    pub marked: bool,
}

/// Which published length table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LengthTable {
    /// Leximatrix, r = 4.
    Lexi4,
    /// Leximatrix, r = 5.
    Lexi5,
    /// Inverse leximatrix, r = 4, prime q.
    InvLexi4,
    /// Shortest known, r = 4, d = 5.
    Best4,
    /// Shortest known, r = 5.
    Best5,
}

impl LengthTable {
    fn source(self) -> &'static str {
        match self {
            LengthTable::Lexi4 => include_str!("../data/table1.csv"),
            LengthTable::Lexi5 => include_str!("../data/table2.csv"),
            LengthTable::InvLexi4 => include_str!("../data/table3.csv"),
            LengthTable::Best4 => include_str!("../data/table4.csv"),
            LengthTable::Best5 => include_str!("../data/table5.csv"),
        }
    }

    pub fn entries(self) -> &'static [LengthEntry] {
        static CACHE: OnceLock<BTreeMap<LengthTable, Vec<LengthEntry>>> = OnceLock::new();
        let all = CACHE.get_or_init(|| {
            [
                LengthTable::Lexi4,
                LengthTable::Lexi5,
                LengthTable::InvLexi4,
                LengthTable::Best4,
                LengthTable::Best5,
            ]
            .into_iter()
            .map(|t| (t, parse_lengths(t.source())))
            .collect()
        });
        &all[&self]
    }

    pub fn length(self, q: u64) -> Option<usize> {
        self.entry(q).map(|e| e.n)
    }

    pub fn entry(self, q: u64) -> Option<LengthEntry> {
        let entries = self.entries();
        entries
            .binary_search_by_key(&q, |e| e.q)
            .ok()
            .map(|i| entries[i])
    }
}

fn parse_lengths(text: &str) -> Vec<LengthEntry> {
    text.lines()
        .skip(1)
        .filter(|l| !l.trim().is_empty())
        .map(|line| {
            let mut it = line.split(',').map(|t| t.trim());
            let q = it.next().and_then(|t| t.parse().ok()).expect("q");
            let n = it.next().and_then(|t| t.parse().ok()).expect("n");
            let marked = it.next() == Some("1");
            LengthEntry { q, n, marked }
        })
        .collect()
}

/// A row of the stable prefix table: the `v`-th leximatrix column for r = 4
/// and the prime from which it no longer changes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StablePrefixRow {
    pub v: usize,
    pub column: [u32; 4],
    pub q0: u64,
}

pub fn stable_prefix_rows() -> &'static [StablePrefixRow] {
    static ROWS: OnceLock<Vec<StablePrefixRow>> = OnceLock::new();
    ROWS.get_or_init(|| {
        include_str!("../data/tableB.csv")
            .lines()
            .skip(1)
            .filter(|l| !l.trim().is_empty())
            .map(|line| {
                let f: Vec<u64> = line.split(',').map(|t| t.trim().parse().unwrap()).collect();
                StablePrefixRow {
                    v: f[0] as usize,
                    column: [f[1] as u32, f[2] as u32, f[3] as u32, f[4] as u32],
                    q0: f[5],
                }
            })
            .collect()
    })
}

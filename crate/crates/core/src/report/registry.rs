use std::collections::BTreeMap;
use std::fs::OpenOptions;
use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{coefficient, lexi_bound_check, ReportError};
use crate::construct::{Algorithm, Code};

/// A code length with its provenance.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CodeRecord {
    pub q: u64,
    pub r: usize,
    pub radius: usize,
    pub n: usize,
    pub d: Option<u32>,
    pub algorithm: Algorithm,
    pub seed: Option<u64>,
    /// Field polynomial in text form, for non-prime `q`.
    pub polynomial: Option<String>,
    pub verified: bool,
}

type RunId = (u64, usize, usize, Algorithm, Option<u64>, Option<String>);

impl CodeRecord {
    pub fn from_code(code: &Code, verified: bool) -> Self {
        CodeRecord {
            q: code.q() as u64,
            r: code.r,
            radius: code.radius,
            n: code.n(),
            d: code.d,
            algorithm: code.algorithm,
            seed: code.seed,
            polynomial: code.field.polynomial_text(),
            verified,
        }
    }

    /// Total order used to pick winners: shorter first, then verified, then
    /// the remaining fields so that equal keys mean equal records.
    fn preference(&self) -> impl Ord + '_ {
        (
            self.n,
            !self.verified,
            self.algorithm,
            self.seed,
            &self.polynomial,
            self.d,
        )
    }

    fn run_id(&self) -> RunId {
        (
            self.q,
            self.r,
            self.radius,
            self.algorithm,
            self.seed,
            self.polynomial.clone(),
        )
    }
}

/// Journal of records plus minimum views per `(q, r, R)`, per
/// `(q, r, R, d)` and per `(q, r, R, algorithm)`.
#[derive(Debug, Clone, Default)]
pub struct Registry {
    journal: Vec<CodeRecord>,
    best: BTreeMap<(u64, usize, usize), CodeRecord>,
    best_d: BTreeMap<(u64, usize, usize, u32), CodeRecord>,
    best_algo: BTreeMap<(u64, usize, usize, Algorithm), CodeRecord>,
    runs: BTreeMap<(RunId, usize), (Option<u32>, bool)>,
}

impl PartialEq for Registry {
    /// Registries are equal when their minimum views agree.
    fn eq(&self, other: &Self) -> bool {
        self.best == other.best && self.best_d == other.best_d && self.best_algo == other.best_algo
    }
}

fn keep_min<K: Ord>(map: &mut BTreeMap<K, CodeRecord>, key: K, rec: &CodeRecord) {
    match map.get(&key) {
        Some(cur) if cur.preference() <= rec.preference() => {}
        _ => {
            map.insert(key, rec.clone());
        }
    }
}

/// Registry holding the minimum of `records`.
pub fn merge_best_known(records: &[CodeRecord]) -> Result<Registry, ReportError> {
    let mut reg = Registry::default();
    for r in records {
        reg.merge(r.clone())?;
    }
    Ok(reg)
}

impl Registry {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a record. A record whose run (q, r, R, algorithm, seed,
    /// polynomial) and length match an earlier one must agree on `d` and the
    /// verification flag.
    pub fn merge(&mut self, rec: CodeRecord) -> Result<(), ReportError> {
        let run = (rec.run_id(), rec.n);
        match self.runs.get(&run) {
            Some(&(d, v)) if d != rec.d || v != rec.verified => {
                return Err(ReportError::ConflictingRecord(format!(
                    "q={} r={} R={} n={} {}: d {:?} vs {:?}, verified {} vs {}",
                    rec.q, rec.r, rec.radius, rec.n, rec.algorithm, d, rec.d, v, rec.verified
                )))
            }
            Some(_) => {}
            None => {
                self.runs.insert(run, (rec.d, rec.verified));
            }
        }
        keep_min(&mut self.best, (rec.q, rec.r, rec.radius), &rec);
        if let Some(d) = rec.d {
            keep_min(&mut self.best_d, (rec.q, rec.r, rec.radius, d), &rec);
        }
        keep_min(&mut self.best_algo, (rec.q, rec.r, rec.radius, rec.algorithm), &rec);
        self.journal.push(rec);
        Ok(())
    }

    pub fn merge_all(&mut self, other: &Registry) -> Result<(), ReportError> {
        for r in &other.journal {
            self.merge(r.clone())?;
        }
        Ok(())
    }

    pub fn is_empty(&self) -> bool {
        self.journal.is_empty()
    }

    pub fn journal(&self) -> &[CodeRecord] {
        &self.journal
    }

    /// Shortest record for `(q, r, R)`.
    pub fn best(&self, q: u64, r: usize, radius: usize) -> Option<&CodeRecord> {
        self.best.get(&(q, r, radius))
    }

    /// Shortest record with minimum distance exactly `d`.
    pub fn best_with_distance(&self, q: u64, r: usize, radius: usize, d: u32) -> Option<&CodeRecord> {
        self.best_d.get(&(q, r, radius, d))
    }

    pub fn best_by_algorithm(
        &self,
        q: u64,
        r: usize,
        radius: usize,
        algorithm: Algorithm,
    ) -> Option<&CodeRecord> {
        self.best_algo.get(&(q, r, radius, algorithm))
    }

    /// Minimum records per `(q, r, R)` in ascending key order.
    pub fn minima(&self) -> impl Iterator<Item = &CodeRecord> {
        self.best.values()
    }

    /// The journal as CSV including the header.
    pub fn to_csv(&self) -> String {
        records_to_csv(&self.journal, true)
    }

    /// The minima as CSV including the header.
    pub fn minima_csv(&self) -> String {
        let m: Vec<CodeRecord> = self.minima().cloned().collect();
        records_to_csv(&m, true)
    }

    pub fn from_csv(text: &str) -> Result<Self, ReportError> {
        let mut reader = csv::Reader::from_reader(text.as_bytes());
        let mut reg = Registry::new();
        for row in reader.deserialize::<CsvRow>() {
            let row = row.map_err(|e| ReportError::Csv(e.to_string()))?;
            reg.merge(row.into_record()?)?;
        }
        Ok(reg)
    }

    /// Loads a journal file; a missing file is an empty registry.
    pub fn load(path: &Path) -> Result<Self, ReportError> {
        let mut text = String::new();
        match std::fs::File::open(path) {
            Ok(mut f) => {
                f.read_to_string(&mut text)
                    .map_err(|e| ReportError::Csv(e.to_string()))?;
                Self::from_csv(&text)
            }
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(Self::new()),
            Err(e) => Err(ReportError::Csv(e.to_string())),
        }
    }

    /// Appends records to a journal file, writing the header if the file is
    /// new or empty.
    pub fn append_journal(path: &Path, records: &[CodeRecord]) -> Result<(), ReportError> {
        let io = |e: std::io::Error| ReportError::Csv(format!("{}: {e}", path.display()));
        let fresh = std::fs::metadata(path).map(|m| m.len() == 0).unwrap_or(true);
        let mut f = OpenOptions::new().create(true).append(true).open(path).map_err(io)?;
        f.write_all(records_to_csv(records, fresh).as_bytes()).map_err(io)
    }
}

pub const CSV_HEADER: &str = "q,r,R,n,d,algo,seed,poly,coeff,delta,delta_pct,bound_ok,verified";

#[derive(Debug, Serialize, Deserialize)]
struct CsvRow {
    q: u64,
    r: usize,
    #[serde(rename = "R")]
    radius: usize,
    n: usize,
    d: u32,
    algo: String,
    seed: String,
    poly: String,
    coeff: String,
    delta: String,
    delta_pct: String,
    bound_ok: String,
    verified: bool,
}

impl CsvRow {
    fn from_record(rec: &CodeRecord) -> Self {
        let coeffs = coefficient(rec).ok();
        let fixed = |x: Option<f64>| x.map_or_else(String::new, |v| format!("{v:.6}"));
        CsvRow {
            q: rec.q,
            r: rec.r,
            radius: rec.radius,
            n: rec.n,
            d: rec.d.unwrap_or(0),
            algo: rec.algorithm.to_string(),
            seed: rec.seed.map_or_else(String::new, |s| s.to_string()),
            poly: rec.polynomial.clone().unwrap_or_default(),
            coeff: fixed(coeffs.map(|c| c.c)),
            delta: fixed(coeffs.map(|c| c.delta)),
            delta_pct: fixed(coeffs.map(|c| c.delta_pct)),
            bound_ok: lexi_bound_check(rec)
                .map(|b| b.holds.to_string())
                .unwrap_or_default(),
            verified: rec.verified,
        }
    }

    fn into_record(self) -> Result<CodeRecord, ReportError> {
        let bad = |what: &str, v: &str| ReportError::Csv(format!("bad {what} {v:?}"));
        Ok(CodeRecord {
            q: self.q,
            r: self.r,
            radius: self.radius,
            n: self.n,
            d: (self.d != 0).then_some(self.d),
            algorithm: self.algo.parse().map_err(|_| bad("algo", &self.algo))?,
            seed: match self.seed.as_str() {
                "" => None,
                s => Some(s.parse().map_err(|_| bad("seed", s))?),
            },
            polynomial: (!self.poly.is_empty()).then_some(self.poly),
            verified: self.verified,
        })
    }
}

fn records_to_csv(records: &[CodeRecord], header: bool) -> String {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(Vec::new());
    if header {
        w.write_record(CSV_HEADER.split(',')).unwrap();
    }
    for rec in records {
        w.serialize(CsvRow::from_record(rec)).unwrap();
    }
    String::from_utf8(w.into_inner().unwrap()).unwrap()
}

//! Text formats: the matrix file and the greedy configuration file.
//!
//! A matrix file starts with the header `q r R n d` (`d = 0` when unknown),
//! followed by `n` lines of `r` labels. Lines starting with `#` are comments;
//! `# poly: <coeffs>` names the field polynomial, `# algo:` and `# seed:`
//! record provenance.

use std::collections::HashSet;
use std::fs;
use std::path::Path;

use thiserror::Error;

use crate::construct::{Algorithm, Code, GreedyConfig, Schedule, StepRule};
use crate::gf::{format_polynomial, parse_polynomial, FieldError, FieldSpec};
use crate::pg::{Column, PgError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("malformed header: {0}")]
    MalformedHeader(String),
    #[error("line {line}: label {label} is outside GF({q})")]
    ColumnOutOfField { line: usize, label: u32, q: u32 },
    #[error("line {line}: column repeats an earlier column")]
    DuplicateColumnInFile { line: usize },
    #[error("line {line}: {reason}")]
    MalformedColumn { line: usize, reason: String },
    #[error("line {line}: {reason}")]
    MalformedConfig { line: usize, reason: String },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("{path}: {reason}")]
    Io { path: String, reason: String },
}

fn io_error(path: &Path, e: std::io::Error) -> FormatError {
    FormatError::Io {
        path: path.display().to_string(),
        reason: e.to_string(),
    }
}

/// Renders a code in the matrix file format.
pub fn format_matrix(code: &Code) -> String {
    let mut out = format!(
        "{} {} {} {} {}\n",
        code.q(),
        code.r,
        code.radius,
        code.n(),
        code.d.unwrap_or(0)
    );
    if let Some(poly) = code.field.polynomial() {
        out.push_str(&format!("# poly: {}\n", format_polynomial(poly)));
    }
    out.push_str(&format!("# algo: {}\n", code.algorithm));
    if let Some(seed) = code.seed {
        out.push_str(&format!("# seed: {seed}\n"));
    }
    for c in &code.columns {
        out.push_str(&c.to_string());
        out.push('\n');
    }
    out
}

pub fn write_matrix_file(code: &Code, path: &Path) -> Result<(), FormatError> {
    fs::write(path, format_matrix(code)).map_err(|e| io_error(path, e))
}

pub fn parse_matrix_file(path: &Path) -> Result<Code, FormatError> {
    let text = fs::read_to_string(path).map_err(|e| io_error(path, e))?;
    parse_matrix(&text)
}

/// Parses the matrix file format.
pub fn parse_matrix(text: &str) -> Result<Code, FormatError> {
    let mut poly = None;
    let mut algorithm = Algorithm::Imported;
    let mut seed = None;
    let mut header: Option<[u64; 5]> = None;
    let mut rows: Vec<(usize, Vec<u32>)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            let comment = comment.trim();
            if let Some(p) = comment.strip_prefix("poly:") {
                poly = Some(parse_polynomial(p).ok_or_else(|| FormatError::MalformedHeader(
                    format!("bad polynomial {:?}", p.trim()),
                ))?);
            } else if let Some(a) = comment.strip_prefix("algo:") {
                algorithm = a.trim().parse().map_err(FormatError::MalformedHeader)?;
            } else if let Some(s) = comment.strip_prefix("seed:") {
                seed = Some(s.trim().parse().map_err(|_| {
                    FormatError::MalformedHeader(format!("bad seed {:?}", s.trim()))
                })?);
            }
            continue;
        }
        if header.is_none() {
            let fields: Vec<u64> = line
                .split_whitespace()
                .map(|t| t.parse())
                .collect::<Result<_, _>>()
                .map_err(|_| FormatError::MalformedHeader(line.to_string()))?;
            let h: [u64; 5] = fields
                .try_into()
                .map_err(|_| FormatError::MalformedHeader(format!("expected `q r R n d`, got {line:?}")))?;
            header = Some(h);
            continue;
        }
        let labels: Vec<u32> = line
            .split_whitespace()
            .map(|t| t.parse())
            .collect::<Result<_, _>>()
            .map_err(|_| FormatError::MalformedColumn {
                line: line_no,
                reason: format!("not a list of labels: {line:?}"),
            })?;
        rows.push((line_no, labels));
    }
    let [q, r, radius, n, d] = header.ok_or_else(|| FormatError::MalformedHeader("missing".into()))?;
    if rows.len() as u64 != n {
        return Err(FormatError::MalformedHeader(format!(
            "header says n = {n} but {} columns follow",
            rows.len()
        )));
    }
    if !(1..=3).contains(&radius) || r < 2 {
        return Err(FormatError::MalformedHeader(format!("unsupported r = {r}, R = {radius}")));
    }
    let field = FieldSpec::from_order(q, poly.as_deref())?;
    let mut seen = HashSet::new();
    let mut columns = Vec::with_capacity(rows.len());
    for (line, labels) in rows {
        if labels.len() as u64 != r {
            return Err(FormatError::MalformedColumn {
                line,
                reason: format!("expected {r} labels, got {}", labels.len()),
            });
        }
        let column = Column::new(labels, &field).map_err(|e| match e {
            PgError::LabelOutOfField { label, q } => FormatError::ColumnOutOfField { line, label, q },
            other => FormatError::MalformedColumn {
                line,
                reason: other.to_string(),
            },
        })?;
        if !seen.insert(column.clone()) {
            return Err(FormatError::DuplicateColumnInFile { line });
        }
        columns.push(column);
    }
    Ok(Code {
        field,
        r: r as usize,
        radius: radius as usize,
        columns,
        algorithm,
        seed,
        d: (d != 0).then_some(d as u32),
    })
}

/// Parses a flat `key=value` greedy configuration.
///
/// Keys: `seed`, `attempts`, `target_length`, `pool`, `pools` (comma list of
/// per-step pool sizes, `full` for a full scan), `full_scan_steps` (comma
/// list of step indices), `full_scan_every`, `full_scan_below`,
/// `full_scan_budget` (`none` disables it) and `start_matrix` (path, relative
/// to `base`).
pub fn parse_greedy_config(
    text: &str,
    field: &FieldSpec,
    r: usize,
    base: Option<&Path>,
) -> Result<GreedyConfig, FormatError> {
    let mut cfg = GreedyConfig::default();
    let mut pools: Vec<StepRule> = Vec::new();
    let mut full_steps: Vec<usize> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let bad = |reason: String| FormatError::MalformedConfig { line: line_no, reason };
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| bad(format!("expected key=value, got {line:?}")))?;
        let (key, value) = (key.trim(), value.trim());
        let num = |v: &str| -> Result<u64, FormatError> {
            v.parse().map_err(|_| bad(format!("{key}: not a number: {v:?}")))
        };
        match key {
            "seed" => cfg.seed = num(value)?,
            "attempts" => cfg.attempts = num(value)? as usize,
            "target_length" => cfg.target_length = Some(num(value)? as usize),
            "pool" => cfg.schedule.pool = num(value)? as usize,
            "pools" => {
                pools = value
                    .split(',')
                    .map(|t| match t.trim() {
                        "full" => Ok(StepRule::FullScan),
                        t => num(t).map(|p| StepRule::Random(p as usize)),
                    })
                    .collect::<Result<_, _>>()?
            }
            "full_scan_steps" => {
                full_steps = value
                    .split(',')
                    .map(|t| num(t.trim()).map(|s| s as usize))
                    .collect::<Result<_, _>>()?
            }
            "full_scan_every" => cfg.schedule.full_scan_every = Some(num(value)? as usize),
            "full_scan_below" => cfg.schedule.full_scan_below = Some(num(value)?),
            "full_scan_budget" => {
                cfg.schedule.full_scan_budget = match value {
                    "none" => None,
                    v => Some(num(v)?),
                }
            }
            "start_matrix" => {
                let path = match base {
                    Some(dir) => dir.join(value),
                    None => value.into(),
                };
                let start = parse_matrix_file(&path)?;
                if start.field != *field || start.r != r {
                    return Err(bad(format!(
                        "start matrix is over GF({}) with r = {}, expected GF({}) with r = {r}",
                        start.q(),
                        start.r,
                        field.q()
                    )));
                }
                cfg.start_matrix = start.columns;
            }
            other => return Err(bad(format!("unknown key {other:?}"))),
        }
    }
    let len = pools.len().max(full_steps.iter().map(|s| s + 1).max().unwrap_or(0));
    if len > 0 {
        let mut steps = vec![StepRule::Random(cfg.schedule.pool); len];
        steps[..pools.len()].copy_from_slice(&pools);
        for s in full_steps {
            steps[s] = StepRule::FullScan;
        }
        cfg.schedule.steps = steps;
    }
    Ok(cfg)
}

/// The configuration as `key=value` text accepted by [`parse_greedy_config`]
/// (without the start matrix).
pub fn format_greedy_config(cfg: &GreedyConfig) -> String {
    let s: &Schedule = &cfg.schedule;
    let mut out = format!("seed={}\nattempts={}\npool={}\n", cfg.seed, cfg.attempts, s.pool);
    if let Some(t) = cfg.target_length {
        out.push_str(&format!("target_length={t}\n"));
    }
    if !s.steps.is_empty() {
        let pools: Vec<String> = s
            .steps
            .iter()
            .map(|rule| match rule {
                StepRule::FullScan => "full".to_string(),
                StepRule::Random(p) => p.to_string(),
            })
            .collect();
        out.push_str(&format!("pools={}\n", pools.join(",")));
    }
    if let Some(k) = s.full_scan_every {
        out.push_str(&format!("full_scan_every={k}\n"));
    }
    if let Some(t) = s.full_scan_below {
        out.push_str(&format!("full_scan_below={t}\n"));
    }
    match s.full_scan_budget {
        Some(b) => out.push_str(&format!("full_scan_budget={b}\n")),
        None => out.push_str("full_scan_budget=none\n"),
    }
    out
}

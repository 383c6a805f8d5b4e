//! The `saturate` command line: construct, verify, sweep and report.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use thiserror::Error;

use crate::construct::{self, Code, GreedyConfig};
use crate::fixtures;
use crate::gf::{self, parse_polynomial, FieldSpec};
use crate::io::{parse_greedy_config, parse_matrix_file, write_matrix_file};
use crate::report::{emit_plot_data, emit_table, CodeRecord, Figure, Registry, Series, TableShape};
use crate::verify::{self, Radius, RadiusMode};

/// Environment variable holding the default worker count.
pub const THREADS_ENV: &str = "SATURATE_THREADS";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Lib(#[from] crate::Error),
    #[error("verification failed: {0}")]
    VerificationFailure(String),
}

impl<E: Into<crate::Error>> From<E> for Box<CliError> {
    fn from(e: E) -> Self {
        Box::new(CliError::Lib(e.into()))
    }
}

type Result<T> = std::result::Result<T, Box<CliError>>;

#[derive(Debug, Parser)]
#[command(name = "saturate", version, about = "Short covering codes of radius 3 over GF(q)")]
struct Cli {
    /// Worker threads (default: $SATURATE_THREADS, else all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Suppress the summary lines of construct and sweep.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build one parity-check matrix.
    Construct(ConstructArgs),
    /// Check a matrix file.
    Verify(VerifyArgs),
    /// Build and verify codes for every field order in a range.
    Sweep(SweepArgs),
    /// Emit tables or plot data from a registry.
    Report(ReportArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum AlgoArg {
    Lexi,
    Invlexi,
    RandGreedy,
    DRandGreedy,
}

#[derive(Debug, Clone, Args)]
struct BuildArgs {
    #[arg(long, value_enum)]
    algo: AlgoArg,
    /// Codimension.
    #[arg(long)]
    r: usize,
    /// Covering radius.
    #[arg(long = "R", default_value_t = 3)]
    radius: usize,
    /// Base seed for the greedy variants.
    #[arg(long)]
    seed: Option<u64>,
    /// Attempts for the greedy variants.
    #[arg(long)]
    attempts: Option<usize>,
    /// Greedy configuration file (key=value).
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ConstructArgs {
    #[command(flatten)]
    build: BuildArgs,
    /// Field order.
    #[arg(long)]
    q: u64,
    /// Field polynomial, constant term first, e.g. "2 2 1".
    #[arg(long)]
    poly: Option<String>,
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    file: PathBuf,
    /// Recompute coverage from scratch instead of using the engine.
    #[arg(long)]
    full: bool,
    /// Print a CSV row instead of key=value lines.
    #[arg(long)]
    csv: bool,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[command(flatten)]
    build: BuildArgs,
    /// Inclusive range `a:b`.
    #[arg(long = "q-range", value_parser = parse_range)]
    q_range: (u64, u64),
    /// Restrict to prime orders.
    #[arg(long)]
    primes_only: bool,
    /// Registry journal to append to.
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TableArg {
    Table1,
    Table2,
    Table3,
    Table4,
    Table5,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FigureArg {
    Sizes,
    Delta,
    DeltaPct,
    Coeff,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SeriesArg {
    Lexi,
    Invlexi,
    Best,
}

#[derive(Debug, Args)]
struct ReportArgs {
    /// Registry journal.
    #[arg(long)]
    registry: PathBuf,
    #[arg(long, value_enum, conflicts_with = "figure")]
    table: Option<TableArg>,
    #[arg(long, value_enum)]
    figure: Option<FigureArg>,
    /// Codimension for plot data.
    #[arg(long, default_value_t = 4)]
    r: usize,
    #[arg(long, value_enum, default_value = "lexi")]
    series: SeriesArg,
    #[arg(long = "q-range", value_parser = parse_range)]
    q_range: Option<(u64, u64)>,
    /// Output file (default: stdout).
    #[arg(short, long)]
    output: Option<PathBuf>,
}

fn parse_range(s: &str) -> std::result::Result<(u64, u64), String> {
    let (a, b) = s.split_once(':').ok_or("expected a:b")?;
    let a: u64 = a.trim().parse().map_err(|_| format!("bad lower bound {a:?}"))?;
    let b: u64 = b.trim().parse().map_err(|_| format!("bad upper bound {b:?}"))?;
    if a > b {
        return Err(format!("empty range {a}:{b}"));
    }
    Ok((a, b))
}

/// Parses arguments, runs the command and returns the exit code: 0 on
/// success, 1 on a domain failure, 2 on a usage error.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let threads = match threads(cli.threads) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("saturate: {e}");
            return 2;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("saturate: {e}");
            return 1;
        }
    };
    match pool.install(|| dispatch(cli.command, cli.quiet)) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("saturate: {e}");
            match *e {
                CliError::Usage(_) => 2,
                _ => 1,
            }
        }
    }
}

fn threads(flag: Option<usize>) -> Result<usize> {
    let n = match flag {
        Some(n) => n,
        None => match std::env::var(THREADS_ENV) {
            Ok(v) => v
                .trim()
                .parse()
                .map_err(|_| usage(format!("{THREADS_ENV} must be a positive integer, got {v:?}")))?,
            Err(_) => 0,
        },
    };
    Ok(n)
}

fn usage(msg: impl Into<String>) -> Box<CliError> {
    Box::new(CliError::Usage(msg.into()))
}

fn dispatch(cmd: Command, quiet: bool) -> Result<()> {
    match cmd {
        Command::Construct(a) => cmd_construct(a, quiet),
        Command::Verify(a) => cmd_verify(a),
        Command::Sweep(a) => cmd_sweep(a, quiet),
        Command::Report(a) => cmd_report(a),
    }
}

fn greedy_config(b: &BuildArgs, field: &FieldSpec) -> Result<GreedyConfig> {
    let mut cfg = match &b.config {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| usage(format!("{}: {e}", path.display())))?;
            parse_greedy_config(&text, field, b.r, path.parent())?
        }
        None => GreedyConfig::default(),
    };
    if let Some(s) = b.seed {
        cfg.seed = s;
    }
    if let Some(a) = b.attempts {
        cfg.attempts = a;
    }
    Ok(cfg)
}

/// Builds a code, then checks its radius with the engine and computes `d`.
fn build_verified(b: &BuildArgs, field: &FieldSpec) -> Result<Code> {
    let mut code = match b.algo {
        AlgoArg::Lexi => construct::leximatrix(field, b.r, b.radius)?,
        AlgoArg::Invlexi => construct::invleximatrix(field, b.r, b.radius)?,
        AlgoArg::RandGreedy => construct::rand_greedy(field, b.r, b.radius, &greedy_config(b, field)?)?,
        AlgoArg::DRandGreedy => {
            construct::d_rand_greedy(field, b.r, b.radius, &greedy_config(b, field)?)?
        }
    };
    let radius = verify::covering_radius(&code, RadiusMode::Incremental)?;
    if radius > Radius::Exactly(b.radius) {
        return Err(Box::new(CliError::VerificationFailure(format!(
            "GF({}) {} code of length {} has covering radius {radius}, expected at most {}",
            field.q(),
            code.algorithm,
            code.n(),
            b.radius
        ))));
    }
    code.d = verify::min_distance(&code, 5).distance.exact();
    Ok(code)
}

fn field_for(q: u64, poly: Option<&str>) -> Result<FieldSpec> {
    let coeffs = match poly {
        Some(text) => Some(parse_polynomial(text).ok_or_else(|| usage(format!("bad polynomial {text:?}")))?),
        None => None,
    };
    Ok(FieldSpec::from_order(q, coeffs.as_deref())?)
}

fn cmd_construct(a: ConstructArgs, quiet: bool) -> Result<()> {
    let field = field_for(a.q, a.poly.as_deref())?;
    let code = build_verified(&a.build, &field)?;
    write_matrix_file(&code, &a.output)?;
    if quiet {
        return Ok(());
    }
    println!(
        "q={} r={} R={} n={} d={} algo={}",
        code.q(),
        code.r,
        code.radius,
        code.n(),
        code.d.unwrap_or(0),
        code.algorithm
    );
    Ok(())
}

fn cmd_verify(a: VerifyArgs) -> Result<()> {
    let code = parse_matrix_file(&a.file)?;
    let mode = if a.full {
        RadiusMode::Exhaustive
    } else {
        RadiusMode::Incremental
    };
    let report = verify::verify(&code, mode)?;
    if a.csv {
        println!("{}", verify::VerificationReport::CSV_HEADER);
        println!("{}", report.to_csv_row());
    } else {
        print!("{}", report.to_key_values());
    }
    if report.covering_radius > Radius::Exactly(code.radius) {
        return Err(Box::new(CliError::VerificationFailure(format!(
            "covering radius {} exceeds the header's {}",
            report.covering_radius, code.radius
        ))));
    }
    if let (Some(claimed), Some(found)) = (code.d, report.min_distance.exact()) {
        if claimed != found {
            return Err(Box::new(CliError::VerificationFailure(format!(
                "minimum distance {found} differs from the header's {claimed}"
            ))));
        }
    }
    Ok(())
}

/// Field orders in `lo..=hi` that have a built-in field: primes, and prime
/// powers with a default polynomial.
pub fn sweep_orders(lo: u64, hi: u64, primes_only: bool) -> Vec<u64> {
    (lo.max(2)..=hi)
        .filter(|&q| match gf::prime_power(q) {
            Some((_, 1)) => true,
            Some(_) => !primes_only && fixtures::default_polynomial(q).is_some(),
            None => false,
        })
        .collect()
}

fn cmd_sweep(a: SweepArgs, quiet: bool) -> Result<()> {
    let (lo, hi) = a.q_range;
    let orders = sweep_orders(lo, hi, a.primes_only);
    if orders.is_empty() {
        return Err(usage(format!("no supported field orders in {lo}:{hi}")));
    }
    let records: Vec<CodeRecord> = orders
        .par_iter()
        .map(|&q| {
            let field = field_for(q, None)?;
            let code = build_verified(&a.build, &field)?;
            Ok(CodeRecord::from_code(&code, true))
        })
        .collect::<Result<_>>()?;
    let mut reg = Registry::load(&a.output)?;
    for rec in &records {
        reg.merge(rec.clone())?;
    }
    Registry::append_journal(&a.output, &records)?;
    if quiet {
        return Ok(());
    }
    for rec in &records {
        println!("q={} n={} d={}", rec.q, rec.n, rec.d.unwrap_or(0));
    }
    Ok(())
}

fn cmd_report(a: ReportArgs) -> Result<()> {
    if !Path::new(&a.registry).exists() {
        return Err(usage(format!("{}: no such file", a.registry.display())));
    }
    let reg = Registry::load(&a.registry)?;
    let text = match (a.table, a.figure) {
        (Some(t), _) => {
            let shape = match t {
                TableArg::Table1 => TableShape::Table1,
                TableArg::Table2 => TableShape::Table2,
                TableArg::Table3 => TableShape::Table3,
                TableArg::Table4 => TableShape::Table4,
                TableArg::Table5 => TableShape::Table5,
            };
            emit_table(&reg, shape, a.q_range)?
        }
        (None, Some(f)) => {
            let figure = match f {
                FigureArg::Sizes => Figure::Sizes,
                FigureArg::Delta => Figure::Delta,
                FigureArg::DeltaPct => Figure::DeltaPct,
                FigureArg::Coeff => Figure::Coeff,
            };
            let series = match a.series {
                SeriesArg::Lexi => Series::Lexi,
                SeriesArg::Invlexi => Series::InvLexi,
                SeriesArg::Best => Series::Best,
            };
            emit_plot_data(&reg, figure, a.r, series, a.q_range)?
        }
        (None, None) => reg.minima_csv(),
    };
    match a.output {
        Some(path) => fs::write(&path, text).map_err(|e| usage(format!("{}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_parse() {
        assert_eq!(parse_range("2:49"), Ok((2, 49)));
        assert!(parse_range("9:2").is_err());
        assert!(parse_range("x").is_err());
    }

    #[test]
    fn sweep_orders_follow_the_polynomial_table() {
        assert_eq!(sweep_orders(2, 16, false), vec![2, 3, 4, 5, 7, 8, 9, 11, 13, 16]);
        assert_eq!(sweep_orders(2, 16, true), vec![2, 3, 5, 7, 11, 13]);
        // 2^15 has no default polynomial
        assert!(!sweep_orders(32760, 32770, false).contains(&32768));
    }

    #[test]
    fn usage_errors_exit_with_two() {
        assert_eq!(run(["saturate", "construct", "--q", "11"]), 2);
        assert_eq!(run(["saturate", "frobnicate"]), 2);
    }
}

//! Acceptance harness: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Runs as a plain binary (`harness = false`).

use std::collections::BTreeMap;
use std::fs;
use std::time::Instant;

use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;

use saturate::construct::{
    greedy_search, invleximatrix, leximatrix, leximatrix_prefix, GreedyConfig, Variant,
};
use saturate::coverage::brute_force_covered;
use saturate::fixtures::{stable_prefix_rows, LengthTable};
use saturate::gf::is_prime;
use saturate::io::format_matrix;
use saturate::report::{coefficients, lexi_bound_check, CodeRecord, Registry};
use saturate::verify::{
    certify_radius, classify, covering_density, min_distance, Distance, DistanceMethod, Radius,
    RadiusMode,
};
use saturate::{Code, CoverageState, FieldSpec};

const NON_PRIME_R4: [u64; 14] = [4, 8, 9, 16, 25, 27, 32, 49, 64, 81, 121, 125, 128, 169];
const ORDERS_R5: [u64; 22] = [
    3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32, 37, 41, 43, 47, 49,
];
const DELTA_TOLERANCE: f64 = 1e-9;
const GREEDY_ATTEMPTS: usize = 200;
const GREEDY_SEED: u64 = 20_240_601;

struct Report {
    failed: usize,
}

impl Report {
    fn line(&mut self, id: u32, title: &str, failures: &[String], note: String, started: Instant) {
        let status = if failures.is_empty() { "PASS" } else { "FAIL" };
        if !failures.is_empty() {
            self.failed += 1;
        }
        println!(
            "criterion {id}: {status} {title} ({note}; {:.1}s)",
            started.elapsed().as_secs_f64()
        );
        for f in failures.iter().take(20) {
            println!("    {f}");
        }
        if failures.len() > 20 {
            println!("    ... {} more", failures.len() - 20);
        }
    }
}

fn field(q: u64) -> FieldSpec {
    FieldSpec::from_order(q, None).expect("built-in field")
}

fn primes(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi).filter(|&q| is_prime(q)).collect()
}

fn build(orders: &[u64], r: usize, inverse: bool) -> Vec<Code> {
    orders
        .par_iter()
        .map(|&q| {
            let f = field(q);
            if inverse {
                invleximatrix(&f, r, 3).unwrap()
            } else {
                leximatrix(&f, r, 3).unwrap()
            }
        })
        .collect()
}

fn compare_lengths(codes: &[Code], table: LengthTable) -> Vec<String> {
    codes
        .iter()
        .filter_map(|c| {
            let q = c.q() as u64;
            match table.length(q) {
                Some(n) if n == c.n() => None,
                expect => Some(format!("q={q}: n={} expected {expect:?}", c.n())),
            }
        })
        .collect()
}

/// Radius, distance and density checks for one code. `exhaustive` selects the
/// brute-force radius computation.
fn verify_code(code: &Code, exhaustive: bool, want_d5: bool) -> Vec<String> {
    let mut out = Vec::new();
    let tag = format!("q={} r={} {} n={}", code.q(), code.r, code.algorithm, code.n());
    let mode = if exhaustive {
        RadiusMode::Exhaustive
    } else {
        RadiusMode::Incremental
    };
    let cert = certify_radius(code, mode).unwrap();
    if cert.radius != Radius::Exactly(3) {
        out.push(format!("{tag}: covering radius {}", cert.radius));
    } else if !exhaustive {
        // the witness must really be missed by all pairs
        let mut pairs = CoverageState::new(&code.field, code.r, 2).unwrap();
        for c in &code.columns {
            pairs.add_column(c.clone()).unwrap();
        }
        match &cert.witness {
            Some(w) if !pairs.is_covered(w) => {}
            w => out.push(format!("{tag}: bad witness {w:?}")),
        }
    }
    if want_d5 {
        let d = min_distance(code, 5);
        if d.distance != Distance::Exactly(5) || d.method != DistanceMethod::Exhaustive {
            out.push(format!("{tag}: distance {:?} via {:?}", d.distance, d.method));
        }
        let report = classify(code, &cert, &d);
        if report.density < BigRational::one() {
            out.push(format!("{tag}: density {} below 1", report.density));
        }
    }
    let mu = covering_density(code.n() as u64, code.r as u32, code.q() as u64, 3);
    if mu < BigRational::one() {
        out.push(format!("{tag}: density {mu} below 1"));
    }
    out
}

fn record(code: &Code) -> CodeRecord {
    CodeRecord::from_code(code, true)
}

fn independent_bound(q: u64, r: usize) -> f64 {
    let q = q as f64;
    match r {
        4 => 2.8 * (q * q.ln()).cbrt(),
        _ => 3.0 * (q * q * q.ln()).cbrt(),
    }
}

fn greedy(q: u64, r: usize, variant: Variant, attempts: usize, seed: u64) -> saturate::construct::GreedyOutcome {
    let cfg = GreedyConfig {
        attempts,
        seed,
        ..GreedyConfig::default()
    };
    greedy_search(&field(q), r, 3, &cfg, variant).unwrap()
}

fn in_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .unwrap()
        .install(f)
}

/// Runs the command line in-process and returns its exit code.
fn run_cli(args: &[&str]) -> i32 {
    let argv = ["saturate", "--quiet"].into_iter().chain(args.iter().copied());
    saturate::cli::run(argv)
}

fn main() {
    let mut report = Report { failed: 0 };

    // 1. leximatrix, r = 4
    let t = Instant::now();
    let mut orders1 = primes(2, 199);
    orders1.extend(NON_PRIME_R4);
    orders1.sort_unstable();
    let lexi4 = build(&orders1, 4, false);
    let f1 = compare_lengths(&lexi4, LengthTable::Lexi4);
    report.line(1, "leximatrix r=4 lengths", &f1, format!("{} orders, exact", lexi4.len()), t);

    // 2. leximatrix, r = 5
    let t = Instant::now();
    let lexi5 = build(&ORDERS_R5, 5, false);
    let f2 = compare_lengths(&lexi5, LengthTable::Lexi5);
    report.line(2, "leximatrix r=5 lengths", &f2, format!("{} orders, exact", lexi5.len()), t);

    // 3. inverse leximatrix, r = 4, with the shorter-than-leximatrix marks
    let t = Instant::now();
    let orders3 = primes(7, 199);
    let inv4 = build(&orders3, 4, true);
    let mut f3 = compare_lengths(&inv4, LengthTable::InvLexi4);
    let lexi_len: BTreeMap<u64, usize> = lexi4.iter().map(|c| (c.q() as u64, c.n())).collect();
    for c in &inv4 {
        let q = c.q() as u64;
        let better = c.n() < lexi_len[&q];
        let marked = LengthTable::InvLexi4.entry(q).map(|e| e.marked);
        if marked != Some(better) {
            f3.push(format!("q={q}: better={better} marked={marked:?}"));
        }
    }
    report.line(3, "invleximatrix r=4 lengths and marks", &f3, format!("{} primes, exact", inv4.len()), t);

    // 4. stable prefix
    let t = Instant::now();
    let rows = stable_prefix_rows();
    let jobs: Vec<(u64, usize)> = primes(233, 293)
        .into_iter()
        .map(|q| (q, 14))
        .chain(primes(1321, 1400).into_iter().map(|q| (q, 20)))
        .collect();
    let f4: Vec<String> = jobs
        .par_iter()
        .flat_map_iter(|&(q, k)| {
            let pre = leximatrix_prefix(&field(q), 4, 3, k).unwrap();
            let mut bad = Vec::new();
            if pre.len() != k {
                bad.push(format!("q={q}: only {} columns", pre.len()));
            }
            for (row, c) in rows.iter().zip(&pre) {
                if c.coords() != &row.column[..] {
                    bad.push(format!("q={q} v={}: {c} expected {:?}", row.v, row.column));
                }
            }
            bad
        })
        .collect();
    report.line(4, "leximatrix prefix stability", &f4, format!("{} primes", jobs.len()), t);

    // 5. verification of every code above
    let t = Instant::now();
    let mut targets: Vec<(&Code, bool)> = Vec::new();
    for c in lexi4.iter().chain(&inv4) {
        targets.push((c, c.q() <= 13));
    }
    for c in &lexi5 {
        targets.push((c, c.q() <= 7));
    }
    let f5: Vec<String> = targets
        .par_iter()
        .flat_map_iter(|&(c, exhaustive)| verify_code(c, exhaustive, true))
        .collect();
    report.line(5, "covering radius 3, distance 5, density >= 1", &f5, format!("{} codes", targets.len()), t);

    // 6. lexi-bound and the percent-difference identity
    let t = Instant::now();
    let mut f6 = Vec::new();
    let mut checked = 0;
    for c in lexi4.iter().filter(|c| (11..=199).contains(&(c.q() as u64))).chain(
        lexi5.iter().filter(|c| (37..=49).contains(&(c.q() as u64))),
    ) {
        let q = c.q() as u64;
        checked += 1;
        let check = lexi_bound_check(&record(c)).unwrap();
        if !check.holds || !check.in_range {
            f6.push(format!("q={q} r={}: n={} bound check {check:?}", c.r, c.n()));
        }
        let k = coefficients(q, c.r, 3, c.n()).unwrap();
        let bound = independent_bound(q, c.r);
        let c0 = if c.r == 4 { 2.8 } else { 3.0 };
        let pct = (bound - c.n() as f64) / bound * 100.0;
        let identity = (1.0 - k.c / c0) * 100.0;
        if (k.bound - bound).abs() > DELTA_TOLERANCE * bound
            || (k.delta_pct - pct).abs() > DELTA_TOLERANCE
            || (k.delta_pct - identity).abs() > DELTA_TOLERANCE
        {
            f6.push(format!("q={q} r={}: {k:?} vs bound {bound} pct {pct} identity {identity}", c.r));
        }
    }
    report.line(6, "lexi-bound and percent identity", &f6, format!("{checked} codes, tol {DELTA_TOLERANCE:e}"), t);

    // 8 runs first so its outputs feed the oracle check
    let t8 = Instant::now();
    let drand = greedy(13, 4, Variant::Distance, GREEDY_ATTEMPTS, GREEDY_SEED);
    let rand5 = greedy(13, 5, Variant::Rand, GREEDY_ATTEMPTS, GREEDY_SEED);
    let to_code = |template: &Code, cols: &Vec<saturate::Column>| Code {
        columns: cols.clone(),
        ..template.clone()
    };
    let mut f8: Vec<String> = drand
        .runs
        .par_iter()
        .flat_map_iter(|cols| verify_code(&to_code(&drand.best, cols), false, true))
        .collect();
    f8.par_extend(
        rand5
            .runs
            .par_iter()
            .flat_map_iter(|cols| verify_code(&to_code(&rand5.best, cols), false, false)),
    );
    if drand.runs.len() != GREEDY_ATTEMPTS || rand5.runs.len() != GREEDY_ATTEMPTS {
        f8.push("not every attempt ran".into());
    }
    if drand.best.n() > 9 {
        f8.push(format!("d-Rand-Greedy GF(13) r=4 best {} > 9", drand.best.n()));
    }
    if rand5.best.n() > 24 {
        f8.push(format!("Rand-Greedy GF(13) r=5 best {} > 24", rand5.best.n()));
    }
    let target4 = LengthTable::Best4.length(13).unwrap();
    let target5 = LengthTable::Best5.length(13).unwrap();
    let note8 = format!(
        "{GREEDY_ATTEMPTS} attempts each; d-rand r=4 best {} (target {target4} {}), rand r=5 best {} (target {target5} {})",
        drand.best.n(),
        if drand.best.n() <= target4 { "met" } else { "missed" },
        rand5.best.n(),
        if rand5.best.n() <= target5 { "met" } else { "missed" },
    );

    // 7. incremental coverage against brute force after every insertion
    let t = Instant::now();
    let mut f7 = Vec::new();
    let mut oracle: Vec<&Code> = Vec::new();
    oracle.extend(lexi4.iter().filter(|c| c.q() <= 13));
    oracle.extend(inv4.iter().filter(|c| c.q() <= 13));
    oracle.extend(lexi5.iter().filter(|c| c.q() <= 7));
    oracle.push(&drand.best);
    let mut insertions = 0;
    for c in &oracle {
        let mut state = CoverageState::new(&c.field, c.r, 3).unwrap();
        for (i, col) in c.columns.iter().enumerate() {
            state.add_column(col.clone()).unwrap();
            insertions += 1;
            let brute = brute_force_covered(&c.columns[..=i], &c.field, c.r, 3).unwrap();
            if state.covered() != &brute || state.covered_count() != brute.count() {
                f7.push(format!("q={} r={} {}: differs after {} columns", c.q(), c.r, c.algorithm, i + 1));
                break;
            }
        }
    }
    report.line(7, "incremental coverage equals brute force", &f7, format!("{} codes, {insertions} insertions", oracle.len()), t);
    report.line(8, "randomized greedy outputs", &f8, note8, t8);

    // 9. determinism across repeats and worker counts
    let t = Instant::now();
    let mut f9 = Vec::new();
    let matrices = |threads: usize| {
        in_pool(threads, || {
            let a = greedy(13, 4, Variant::Distance, 24, 7);
            let b = greedy(11, 5, Variant::Rand, 16, 7);
            let l = leximatrix(&field(27), 4, 3).unwrap();
            [&a.best, &b.best, &l].map(format_matrix).join("\n")
        })
    };
    let base = matrices(1);
    for threads in [1, 4] {
        if matrices(threads) != base {
            f9.push(format!("matrices differ with {threads} workers"));
        }
    }
    let dir = tempfile::tempdir().unwrap();
    let sweep = |threads: usize, name: &str| {
        let journal = dir.path().join(format!("{name}.csv"));
        let table = dir.path().join(format!("{name}.table.csv"));
        let j = journal.to_str().unwrap();
        let th = threads.to_string();
        let codes = [
            run_cli(&["--threads", &th, "sweep", "--algo", "lexi", "--r", "4", "--q-range", "2:32", "-o", j]),
            run_cli(&[
                "--threads", &th, "sweep", "--algo", "d-rand-greedy", "--r", "4", "--q-range", "7:17",
                "--seed", "3", "--attempts", "8", "-o", j,
            ]),
            run_cli(&["--threads", &th, "report", "--registry", j, "--table", "table4", "-o", table.to_str().unwrap()]),
        ];
        let text = fs::read(&journal).unwrap_or_default();
        let minima = Registry::load(&journal).map(|r| r.minima_csv()).unwrap_or_default();
        (codes, text, minima, fs::read(&table).unwrap_or_default())
    };
    let first = sweep(1, "a");
    if first.0 != [0, 0, 0] {
        f9.push(format!("cli exit codes {:?}", first.0));
    }
    for (threads, name) in [(1, "b"), (4, "c")] {
        let again = sweep(threads, name);
        if again != first {
            f9.push(format!("sweep output differs with {threads} workers"));
        }
    }
    report.line(9, "deterministic matrices and CSVs", &f9, "1 vs 4 workers, repeated".into(), t);

    println!(
        "acceptance: {} of 9 criteria passed",
        9 - report.failed
    );
    if report.failed > 0 {
        std::process::exit(1);
    }
}

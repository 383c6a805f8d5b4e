//! Randomized greedy search with a seed and attempt budget.
//!
//! `cargo run --release --example greedy -- 13 4 d 50 1`
//! (q, r, variant `d` or `rand`, attempts, seed)

use std::collections::BTreeMap;

use saturate::construct::{greedy_search, GreedyConfig, Variant};
use saturate::io::format_matrix;
use saturate::verify::min_distance;
use saturate::FieldSpec;

fn main() -> Result<(), saturate::Error> {
    let mut args = std::env::args().skip(1);
    let q: u64 = args.next().map_or(13, |s| s.parse().expect("q"));
    let r: usize = args.next().map_or(4, |s| s.parse().expect("r"));
    let variant = match args.next().as_deref() {
        None | Some("d") => Variant::Distance,
        Some("rand") => Variant::Rand,
        Some(v) => panic!("unknown variant {v:?}, expected d or rand"),
    };
    let attempts: usize = args.next().map_or(50, |s| s.parse().expect("attempts"));
    let seed: u64 = args.next().map_or(1, |s| s.parse().expect("seed"));

    let f = FieldSpec::from_order(q, None)?;
    let cfg = GreedyConfig {
        attempts,
        seed,
        ..GreedyConfig::default()
    };
    let outcome = greedy_search(&f, r, 3, &cfg, variant)?;
    let mut histogram = BTreeMap::new();
    for n in &outcome.lengths {
        *histogram.entry(*n).or_insert(0) += 1;
    }
    println!("lengths over {} attempts: {histogram:?}", outcome.lengths.len());
    let mut best = outcome.best;
    best.d = min_distance(&best, 5).distance.exact();
    print!("{}", format_matrix(&best));
    Ok(())
}

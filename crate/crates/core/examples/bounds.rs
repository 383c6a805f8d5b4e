//! Published lengths against the lexi-bound and the refined constants.
//!
//! `cargo run --example bounds -- 4`

use saturate::construct::Algorithm;
use saturate::fixtures::LengthTable;
use saturate::report::{coefficients, lexi_bound_check, CodeRecord};

fn main() -> Result<(), saturate::Error> {
    let r: usize = std::env::args().nth(1).map_or(4, |s| s.parse().expect("r"));
    let table = if r == 4 { LengthTable::Lexi4 } else { LengthTable::Lexi5 };
    println!("{:>5} {:>4} {:>9} {:>8} {:>8} {:>7} {:>6}", "q", "n", "bound", "delta", "delta%", "c", "holds");
    let mut worst: Option<(f64, u64)> = None;
    for e in table.entries() {
        let c = coefficients(e.q, r, 3, e.n)?;
        let rec = CodeRecord {
            q: e.q,
            r,
            radius: 3,
            n: e.n,
            d: Some(5),
            algorithm: Algorithm::Lexi,
            seed: None,
            polynomial: None,
            verified: false,
        };
        let check = lexi_bound_check(&rec)?;
        if check.in_range && worst.is_none_or(|(w, _)| c.c > w) {
            worst = Some((c.c, e.q));
        }
        if e.q <= 200 || e.q % 500 < 10 {
            println!(
                "{:>5} {:>4} {:>9.3} {:>8.3} {:>8.3} {:>7.4} {:>6}",
                e.q, e.n, c.bound, c.delta, c.delta_pct, c.c, check.holds
            );
        }
    }
    if let Some((c, q)) = worst {
        println!("largest coefficient in range: {c:.4} at q = {q}");
    }
    Ok(())
}

//! Inverse leximatrix lengths next to leximatrix lengths for a range of
//! primes: `cargo run --release --example invleximatrix -- 60 110`.

use saturate::construct::{invleximatrix, leximatrix};
use saturate::gf::is_prime;
use saturate::FieldSpec;

fn main() -> Result<(), saturate::Error> {
    let mut args = std::env::args().skip(1);
    let lo: u64 = args.next().map_or(60, |s| s.parse().expect("lower q"));
    let hi: u64 = args.next().map_or(110, |s| s.parse().expect("upper q"));
    println!("{:>5} {:>5} {:>7}", "q", "lexi", "invlexi");
    for q in (lo..=hi).filter(|&q| is_prime(q)) {
        let f = FieldSpec::from_order(q, None)?;
        let l = leximatrix(&f, 4, 3)?.n();
        let inv = invleximatrix(&f, 4, 3)?;
        let mark = if inv.n() < l { "  shorter" } else { "" };
        println!("{q:>5} {l:>5} {:>7}{mark}", inv.n());
    }
    Ok(())
}

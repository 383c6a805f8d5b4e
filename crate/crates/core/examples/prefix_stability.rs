//! Leading leximatrix columns across growing primes, and where each one
//! stops changing: `cargo run --release --example prefix_stability -- 16 300`.

use saturate::construct::stable_prefix;
use saturate::gf::is_prime;

fn main() -> Result<(), saturate::Error> {
    let mut args = std::env::args().skip(1);
    let k: usize = args.next().map_or(16, |s| s.parse().expect("k"));
    let hi: u64 = args.next().map_or(300, |s| s.parse().expect("largest q"));
    let orders: Vec<u64> = (2..=hi).filter(|&q| is_prime(q)).collect();
    let rows = stable_prefix(4, 3, k, &orders)?;
    println!("{:>3}  {:<16} {:>6} {:>9}", "v", "column", "q0", "reference");
    for row in rows {
        let col = row.column.map_or("-".into(), |c| c.to_string());
        let q0 = row.q0.map_or("-".into(), |q| q.to_string());
        let reference = match row.matches_reference {
            Some(true) => "agrees",
            Some(false) => "differs",
            None => "",
        };
        println!("{:>3}  {col:<16} {q0:>6} {reference:>9}", row.v);
    }
    Ok(())
}

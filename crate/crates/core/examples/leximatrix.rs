//! Leximatrix code for one field: `cargo run --release --example leximatrix -- 37 4`.

use saturate::construct::leximatrix;
use saturate::fixtures::LengthTable;
use saturate::FieldSpec;

fn main() -> Result<(), saturate::Error> {
    let mut args = std::env::args().skip(1);
    let q: u64 = args.next().map_or(37, |s| s.parse().expect("q"));
    let r: usize = args.next().map_or(4, |s| s.parse().expect("r"));
    let radius: usize = args.next().map_or(3, |s| s.parse().expect("R"));
    let f = FieldSpec::from_order(q, None)?;
    let code = leximatrix(&f, r, radius)?;
    println!("leximatrix over {f}, r={r}, R={radius}: n = {}", code.n());
    let table = match (r, radius) {
        (4, 3) => LengthTable::Lexi4.length(q),
        (5, 3) => LengthTable::Lexi5.length(q),
        _ => None,
    };
    if let Some(n) = table {
        println!("published length: {n}");
    }
    for (i, c) in code.columns.iter().enumerate() {
        println!("h{:<3} {c}", i + 1);
    }
    Ok(())
}

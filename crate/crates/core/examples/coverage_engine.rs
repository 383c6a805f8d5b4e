//! The incremental coverage state, column by column, against a recount from
//! scratch: `cargo run --release --example coverage_engine -- 7 4`.

use saturate::construct::leximatrix;
use saturate::coverage::brute_force_covered;
use saturate::{CoverageState, FieldSpec};

fn main() -> Result<(), saturate::Error> {
    let mut args = std::env::args().skip(1);
    let q: u64 = args.next().map_or(7, |s| s.parse().expect("q"));
    let r: usize = args.next().map_or(4, |s| s.parse().expect("r"));
    let f = FieldSpec::from_order(q, None)?;
    let code = leximatrix(&f, r, 3)?;
    let mut state = CoverageState::new(&f, r, 3)?;
    println!("{} points", state.point_count());
    for (i, c) in code.columns.iter().enumerate() {
        let gain = state.gain(c)?;
        let fresh = state.add_column(c.clone())?;
        let brute = brute_force_covered(&code.columns[..=i], &f, r, 3)?;
        println!(
            "+ {c:<12} gain {gain:>6}  covered {:>8}  recount {:>8}  {}",
            state.covered_count(),
            brute.count(),
            if &brute == state.covered() { "same" } else { "DIFFERENT" }
        );
        assert_eq!(gain, fresh);
    }
    let gains = state.all_gains();
    println!("complete: {}, max remaining gain {}", state.is_complete(), gains.iter().max().unwrap_or(&0));
    Ok(())
}

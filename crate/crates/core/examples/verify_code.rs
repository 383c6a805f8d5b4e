//! Independent checks of a code: radius, minimum distance, density.
//!
//! `cargo run --release --example verify_code -- 11 4` builds the leximatrix
//! code; `-- path/to/matrix.txt` checks a matrix file instead.

use saturate::construct::leximatrix;
use saturate::io::parse_matrix_file;
use saturate::verify::{verify, RadiusMode};
use saturate::FieldSpec;

fn main() -> Result<(), saturate::Error> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let code = match args.first() {
        Some(path) if path.parse::<u64>().is_err() => parse_matrix_file(path.as_ref())?,
        _ => {
            let q = args.first().map_or(11, |s| s.parse().unwrap());
            let r = args.get(1).map_or(4, |s| s.parse().expect("r"));
            leximatrix(&FieldSpec::from_order(q, None)?, r, 3)?
        }
    };
    let mode = if code.field.q() <= 13 {
        RadiusMode::Exhaustive
    } else {
        RadiusMode::Incremental
    };
    let report = verify(&code, mode)?;
    print!("{}", report.to_key_values());
    println!("density ~ {:.6}", report.density_value());
    Ok(())
}

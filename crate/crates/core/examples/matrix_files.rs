//! The matrix and greedy configuration text formats.
//!
//! `cargo run --example matrix_files -- 16`

use saturate::construct::{d_rand_greedy, leximatrix};
use saturate::io::{format_greedy_config, format_matrix, parse_greedy_config, parse_matrix};
use saturate::FieldSpec;

fn main() -> Result<(), saturate::Error> {
    let q: u64 = std::env::args().nth(1).map_or(16, |s| s.parse().expect("q"));
    let f = FieldSpec::from_order(q, None)?;
    let code = leximatrix(&f, 4, 3)?;
    let text = format_matrix(&code);
    print!("{text}");
    let back = parse_matrix(&text)?;
    assert_eq!(back.columns, code.columns);

    let cfg_text = "seed=5\nattempts=3\npools=full,full,10\npool=30\nfull_scan_budget=none\n";
    let cfg = parse_greedy_config(cfg_text, &f, 4, None)?;
    println!("config:\n{}", format_greedy_config(&cfg));
    let greedy = d_rand_greedy(&f, 4, 3, &cfg)?;
    print!("{}", format_matrix(&greedy));
    Ok(())
}

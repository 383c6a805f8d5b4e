//! Columns of PG(r-1, q) in both scan orders, with their ranks and sort keys.
//!
//! `cargo run --example projective_points -- 3 3`

use saturate::pg::{invlex_index, iterate_columns, lex_index, normalize};
use saturate::{ColumnOrder, FieldSpec, ProjectiveSpace};

fn main() -> Result<(), saturate::Error> {
    let mut args = std::env::args().skip(1);
    let q: u64 = args.next().map_or(3, |s| s.parse().expect("q"));
    let r: usize = args.next().map_or(3, |s| s.parse().expect("r"));
    let f = FieldSpec::from_order(q, None)?;
    let space = ProjectiveSpace::new(&f, r)?;
    println!("PG({}, {q}) has {} points", r - 1, space.point_count());
    println!("{:>6}  {:<16} {:>8} {:>8}", "rank", "column", "lex", "invlex");
    for c in iterate_columns(&f, r, ColumnOrder::Lex)?.take(40) {
        println!(
            "{:>6}  {:<16} {:>8} {:>8}",
            space.rank(&c),
            c.to_string(),
            lex_index(&c, &f),
            invlex_index(&c, &f)
        );
    }
    let first_inv: Vec<String> = iterate_columns(&f, r, ColumnOrder::InvLex)?
        .take(5)
        .map(|c| format!("({c})"))
        .collect();
    println!("inverse order starts with {}", first_inv.join(", "));
    let v: Vec<u32> = (1..=r as u32).map(|x| x % q as u32).collect();
    println!("normalize({v:?}) = {}", normalize(&v, &f)?);
    Ok(())
}

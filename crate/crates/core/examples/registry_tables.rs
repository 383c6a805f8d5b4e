//! Sweep a range with two algorithms, merge into a registry and emit the
//! length tables and plot data: `cargo run --release --example registry_tables -- 7 61`.

use saturate::construct::{invleximatrix, leximatrix};
use saturate::gf::is_prime;
use saturate::report::{emit_plot_data, emit_table, CodeRecord, Figure, Registry, Series, TableShape};
use saturate::verify::min_distance;
use saturate::FieldSpec;

fn main() -> Result<(), saturate::Error> {
    let mut args = std::env::args().skip(1);
    let lo: u64 = args.next().map_or(7, |s| s.parse().expect("lower q"));
    let hi: u64 = args.next().map_or(61, |s| s.parse().expect("upper q"));
    let mut reg = Registry::new();
    for q in (lo..=hi).filter(|&q| is_prime(q)) {
        let f = FieldSpec::from_order(q, None)?;
        for mut code in [leximatrix(&f, 4, 3)?, invleximatrix(&f, 4, 3)?] {
            code.d = min_distance(&code, 5).distance.exact();
            reg.merge(CodeRecord::from_code(&code, true))?;
        }
    }
    print!("{}", emit_table(&reg, TableShape::Table1, None)?);
    print!("{}", emit_table(&reg, TableShape::Table3, None)?);
    print!("{}", emit_table(&reg, TableShape::Table4, None)?);
    print!("{}", emit_plot_data(&reg, Figure::DeltaPct, 4, Series::Best, None)?);
    print!("{}", reg.minima_csv());
    Ok(())
}

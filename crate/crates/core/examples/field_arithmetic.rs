//! Arithmetic on field labels: `cargo run --example field_arithmetic -- 9`.

use saturate::FieldSpec;

fn main() -> Result<(), saturate::Error> {
    let q: u64 = std::env::args().nth(1).map_or(Ok(9), |s| s.parse()).expect("field order");
    let f = FieldSpec::from_order(q, None)?;
    println!("{f}");
    if q > 16 {
        let (a, b) = (f.element(2)?, f.element(q as u32 - 1)?);
        println!("2 + {b} = {}", f.add(a, b));
        println!("2 * {b} = {}", f.mul(a, b));
        println!("1 / 2 = {}", f.inv(a)?);
        return Ok(());
    }
    println!("multiplication table:");
    for a in f.elements() {
        let row: Vec<String> = f.elements().map(|b| format!("{:>3}", f.mul(a, b).label())).collect();
        println!("{}", row.join(""));
    }
    println!("addition table:");
    for a in f.elements() {
        let row: Vec<String> = f.elements().map(|b| format!("{:>3}", f.add(a, b).label())).collect();
        println!("{}", row.join(""));
    }
    let logs: Vec<String> = f
        .elements()
        .skip(1)
        .map(|a| format!("{a}:{}", f.log(a).unwrap()))
        .collect();
    println!("logs: {}", logs.join(" "));
    Ok(())
}

//! The simple-matrix engine drives every small prime exponent upward.

use afcantor::fraisse::{build_fraisse, supernatural, CategorySpec, Schedule};

fn main() -> afcantor::Result<()> {
    let (d, _) = build_fraisse(&CategorySpec::all_dims(6).uhf(), 60, Schedule::default())?;
    println!("top level {}", d.level(d.depth() - 1));
    for p in supernatural(&d, 13) {
        println!("{:>3}^{}{}", p.prime, p.exponent, if p.growing { " (growing)" } else { "" });
    }
    Ok(())
}

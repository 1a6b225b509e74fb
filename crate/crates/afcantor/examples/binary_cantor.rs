//! The binary splitting diagram of the Cantor set passes the Cantor check.

use afcantor::bratteli::{check_cantor, verify_witness, BratteliDiagram, CheckOptions, Condition};

fn main() -> afcantor::Result<()> {
    let d = BratteliDiagram::binary(8);
    let r = check_cantor(&d, &CheckOptions::default())?;
    println!("verdict {:?} at depth {}", r.verdict, r.depth);
    for c in [Condition::D0, Condition::D1, Condition::D2] {
        println!("{c:?}: {} witnessed, {} open", r.count(c, true), r.count(c, false));
    }
    let all_verify = r
        .witnessed
        .iter()
        .all(|(i, w)| verify_witness(&d, i, w, false).unwrap_or(false));
    println!("every witness re-verifies: {all_verify}");
    Ok(())
}

//! Cover an arbitrary diagram by a left-invertible one and recover it as a
//! quotient by an essential ideal.

use afcantor::bratteli::{is_essential, quotient, split_cover, BratteliDiagram};
use afcantor::fdalg::{alg, mor};

fn main() -> afcantor::Result<()> {
    // M1 -> M2 -> M6, neither step left-invertible
    let d = BratteliDiagram::new(
        vec![alg(&[1]), alg(&[2]), alg(&[6])],
        vec![mor(&[1], &[2], &[&[2]]), mor(&[2], &[6], &[&[3]])],
    )?;
    let (cover, ideal) = split_cover(&d)?;
    for n in 0..cover.depth() {
        println!("cover level {n}: {}", cover.level(n));
    }
    println!("ideal nodes: {}", ideal.nodes().map(|v| v.to_string()).collect::<Vec<_>>().join(" "));
    println!("essential: {:?}", is_essential(&cover, &ideal)?);
    println!("quotient reproduces input: {}", quotient(&cover, &ideal)? == d);
    Ok(())
}

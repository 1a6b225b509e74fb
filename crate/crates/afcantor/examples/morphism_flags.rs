//! Classify a few multiplicity matrices and build canonical left inverses.

use afcantor::fdalg::{canonical_left_inverse, compose, mor, validate_morphism};

fn main() -> afcantor::Result<()> {
    let cases = [
        ("corner M2 -> M2+M5", mor(&[2], &[2, 5], &[&[1], &[2]])),
        ("doubling M1 -> M2", mor(&[1], &[2], &[&[2]])),
        ("diagonal M1 -> M1+M1", mor(&[1], &[1, 1], &[&[1], &[1]])),
    ];
    for (name, m) in &cases {
        let f = validate_morphism(m)?;
        println!(
            "{name}: homomorphism={} unital={} embedding={} left_invertible={}",
            f.homomorphism, f.unital, f.embedding, f.left_invertible
        );
        if f.left_invertible {
            let ep = canonical_left_inverse(m)?;
            let back = compose(&ep.back, &ep.fwd)?;
            println!("  left inverse {:?}, back after fwd is identity: {}", ep.back.mult, back.is_identity());
        }
    }
    Ok(())
}

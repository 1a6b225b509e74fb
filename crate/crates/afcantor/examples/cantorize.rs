//! Doubling a diagram level by level presents A tensor C(2^N).

use afcantor::bratteli::{cantorize, check_cantor, BratteliDiagram, CheckOptions, Condition};
use afcantor::fdalg::{alg, mor};

fn main() -> afcantor::Result<()> {
    let d = BratteliDiagram::new(
        vec![alg(&[1]), alg(&[1, 2]), alg(&[1, 2, 3])],
        vec![
            mor(&[1], &[1, 2], &[&[1], &[2]]),
            mor(&[1, 2], &[1, 2, 3], &[&[1, 0], &[0, 1], &[1, 1]]),
        ],
    )?;
    let c = cantorize(&d)?;
    for n in 0..c.depth() {
        println!("level {n}: {} summands", c.level(n).len());
    }
    for (name, x) in [("input", &d), ("cantorized", &c)] {
        let r = check_cantor(x, &CheckOptions::default())?;
        println!("{name}: {:?}, D1 open {}", r.verdict, r.count(Condition::D1, false));
    }
    Ok(())
}

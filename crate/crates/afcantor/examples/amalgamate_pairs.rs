//! Amalgamate two EP-pairs over M2 and verify the four square identities.

use afcantor::amalgam::{identities, proper_amalgamate};
use afcantor::fdalg::{canonical_left_inverse, mor};

fn main() -> afcantor::Result<()> {
    let ep1 = canonical_left_inverse(&mor(&[2], &[2, 3], &[&[1], &[1]]))?;
    let ep2 = canonical_left_inverse(&mor(&[2], &[2, 2], &[&[1], &[1]]))?;
    let am = proper_amalgamate(&ep1, &ep2, false)?;
    println!("G = {}", am.g);
    println!("E -> G {:?}", am.left.fwd.mult);
    println!("F -> G {:?}", am.right.fwd.mult);
    for id in identities(&ep1, &ep2, &am)? {
        println!("{:<24} {}", id.name, id.holds);
    }
    Ok(())
}

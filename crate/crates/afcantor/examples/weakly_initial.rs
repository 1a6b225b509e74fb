//! Minimal generators of a dimension set: the weakly initial object of the
//! unital category it spans.

use afcantor::amalgam::{minimal_generators, weakly_initial};

fn main() -> afcantor::Result<()> {
    for set in [vec![2, 3, 5], vec![4, 6, 9, 10], vec![6, 10, 15], vec![1, 7]] {
        println!("{set:?}: generators {:?}, initial object {}", minimal_generators(&set)?, weakly_initial(&set)?);
    }
    Ok(())
}

//! Build the EP-section that exhibits a small AF algebra as a quotient of a
//! split extension inside the universal prefix.

use afcantor::bratteli::BratteliDiagram;
use afcantor::fdalg::{alg, mor};
use afcantor::fraisse::{build_fraisse, universal_surjection_witness, verify_section, CategorySpec, Schedule, Section};

fn main() -> afcantor::Result<()> {
    let (u, _) = build_fraisse(&CategorySpec::all_dims(6), 300, Schedule::default())?;
    let d = BratteliDiagram::new(
        vec![alg(&[1]), alg(&[1]), alg(&[3])],
        vec![mor(&[1], &[1], &[&[1]]), mor(&[1], &[3], &[&[3]])],
    )?;
    let w = universal_surjection_witness(&u, &d, 3, u.depth() - 1)?;
    println!("essential {:?}, quotient matches {}", w.essential, w.quotient_matches);
    match &w.section {
        Section::Found { rounds } => {
            for (i, r) in rounds.iter().enumerate() {
                println!("round {i}: B{i} -> U{}", r.level);
            }
            println!("identities verified: {}", verify_section(&u, &w.cover, rounds)?);
        }
        other => println!("{other:?}"),
    }
    println!("complete: {}", w.is_complete());
    Ok(())
}

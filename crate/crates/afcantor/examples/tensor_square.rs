//! A Fraisse sequence for {2,3,5,11} tensored with itself loses the Cantor
//! property: M15 never embeds alone into M22.

use afcantor::bratteli::{check_cantor, tensor, CheckOptions, Instance};
use afcantor::fraisse::{build_fraisse, CategorySpec, Schedule};

fn main() -> afcantor::Result<()> {
    let (d, _) = build_fraisse(&CategorySpec::explicit(&[2, 3, 5, 11]), 20, Schedule { lead: 0 })?;
    let sq = tensor(&d, &d)?.truncate(12);
    let opts = CheckOptions {
        max_subset: Some(1),
        ..Default::default()
    };
    let r = check_cantor(&sq, &opts)?;
    println!("tensor square depth {}: {:?}", sq.depth(), r.verdict);
    let open: Vec<_> = r
        .unwitnessed
        .iter()
        .filter(|i| match i {
            Instance::D2 { level, sources, mult, target } => {
                sources.len() == 1 && mult[0] == 1 && *target == 22 && sq.level(*level).dim(sources[0]) == 15
            }
            _ => false,
        })
        .collect();
    println!("open instances with a single M15 into M22: {}", open.len());
    if let Some(i) = open.first() {
        println!("first: {i}");
    }
    Ok(())
}

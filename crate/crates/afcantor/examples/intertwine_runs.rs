//! Two runs for {1,2} under different schedules are intertwined by exact
//! back-and-forth absorption.

use afcantor::fraisse::{build_fraisse, intertwine, verify_intertwining, CategorySpec, Intertwining, Schedule};

fn main() -> afcantor::Result<()> {
    let spec = CategorySpec::explicit(&[1, 2]);
    let (a, _) = build_fraisse(&spec, 200, Schedule { lead: 2 })?;
    let (b, _) = build_fraisse(&spec, 200, Schedule { lead: 0 })?;
    println!("runs differ: {}", a != b);
    let top = a.depth().min(b.depth()) - 1;
    match intertwine(&a, &b, 6, top)? {
        Intertwining::Found { links } => {
            for (k, l) in links.iter().enumerate() {
                let (x, y) = if k % 2 == 0 { ("A", "B") } else { ("B", "A") };
                println!("{x}{} -> {y}{}", l.from, l.to);
            }
            println!("triangles commute: {}", verify_intertwining(&a, &b, &links)?);
        }
        other => println!("{other:?}"),
    }
    Ok(())
}

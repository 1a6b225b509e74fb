//! Read a dimension group off a diagram, push elements, test the scale.

use afcantor::bratteli::{BratteliDiagram, CheckOptions};
use afcantor::k0::{check_universal_presentation, extract_k0, in_scale, push, translate, GroupElement};

fn main() -> afcantor::Result<()> {
    let d = BratteliDiagram::binary(5);
    let p = extract_k0(&d);
    println!("ranks {:?}, order unit in prefix {}", p.ranks, p.order_unit_in_prefix());
    println!("round trip exact: {}", translate(&p)? == d);
    let g = GroupElement::new(&p, 1, vec![1, 0])?;
    println!("push to level 3: {:?}", push(&p, &g, 3)?.coords);
    println!("in scale: {:?}", in_scale(&p, &g, 5)?);
    let two = GroupElement::new(&p, 1, vec![2, 2])?;
    println!("(2,2) in scale: {:?}", in_scale(&p, &two, 5)?);
    let opts = CheckOptions {
        universe: Some(vec![1]),
        ..Default::default()
    };
    for c in check_universal_presentation(&p, 5, &opts)?.conditions {
        println!("condition {} via {:?}: holds {}", c.condition, c.counterpart, c.holds());
    }
    Ok(())
}

//! Graphviz text for a small diagram.

use afcantor::bratteli::{to_dot, BratteliDiagram};

fn main() {
    print!("{}", to_dot(&BratteliDiagram::binary(3)));
}

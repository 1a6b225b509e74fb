use std::fmt::Write;

use super::BratteliDiagram;

/// Graphviz text: one node per summand labelled by its dimension, one edge
/// per nonzero multiplicity labelled by the multiplicity. Levels are ranks.
pub fn to_dot(d: &BratteliDiagram) -> String {
    let mut out = String::from("digraph bratteli {\n  node [shape=circle];\n");
    for (n, a) in d.levels().iter().enumerate() {
        let _ = write!(out, "  {{ rank=same;");
        for s in 0..a.len() {
            let _ = write!(out, " n{n}_{s};");
        }
        out.push_str(" }\n");
        for (s, dim) in a.dims().iter().enumerate() {
            let _ = writeln!(out, "  n{n}_{s} [label=\"{dim}\"];");
        }
    }
    for (n, step) in d.steps().iter().enumerate() {
        for (t, row) in step.mult.iter().enumerate() {
            for (s, &x) in row.iter().enumerate() {
                if x != 0 {
                    let _ = writeln!(out, "  n{n}_{s} -> n{}_{t} [label=\"{x}\"];", n + 1);
                }
            }
        }
    }
    out.push_str("}\n");
    out
}

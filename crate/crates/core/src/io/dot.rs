use std::fmt::Write;

use crate::poset::{hasse_edges, PosetMatrix};

/// Graphviz digraph of the Hasse diagram, edges pointing from lower to
/// upper elements. Nodes follow storage order and edges follow
/// [`hasse_edges`], so the output is deterministic.
pub fn to_dot(m: &PosetMatrix) -> String {
    let mut out = String::from("digraph poset {\n");
    for label in m.labels() {
        let _ = writeln!(out, "  \"{label}\";");
    }
    for (lower, upper) in hasse_edges(m) {
        let _ = writeln!(out, "  \"{}\" -> \"{}\";", m.label(lower), m.label(upper));
    }
    out.push_str("}\n");
    out
}

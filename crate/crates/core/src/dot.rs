//! Graphviz rendering of Hasse diagrams.

use std::fmt::Write;

use crate::poset::Poset;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Renders the covering relation of `p` as a DOT digraph drawn bottom to
/// top. Nodes are named by their context path and label joined with `.`;
/// nodes and edges come out in lexicographic order.
pub fn export_dot(p: &Poset) -> String {
    let mut nodes: Vec<String> = p.elements().iter().map(|x| x.qualified()).collect();
    nodes.sort();
    let mut edges: Vec<(String, String)> = p.hasse().iter().map(|(a, b)| (a.qualified(), b.qualified())).collect();
    edges.sort();
    let mut out = String::from("digraph {\n  rankdir=BT;\n");
    for n in &nodes {
        let _ = writeln!(out, "  {};", quote(n));
    }
    for (a, b) in &edges {
        let _ = writeln!(out, "  {} -> {};", quote(a), quote(b));
    }
    out.push_str("}\n");
    out
}

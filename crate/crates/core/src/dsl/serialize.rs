use std::fmt;

use super::ast::{Expr, Item, Query, ScenarioDoc, StateDecl};

fn joined<T: fmt::Display>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Base { elements, order } => {
                write!(f, "base{{{}}}", joined(elements))?;
                if !order.is_empty() {
                    write!(f, " order{{{}}}", joined(order.iter().map(|(a, b)| format!("{a} < {b}"))))?;
                }
                Ok(())
            }
            Expr::Power(inner) => write!(f, "power({inner})"),
            Expr::Product(ps) => write!(f, "product({})", joined(ps)),
            Expr::Disjoint(ps) => write!(f, "disjoint({})", joined(ps)),
            Expr::Union(ps) => write!(f, "union({})", joined(ps)),
            Expr::Atoms(items) => write!(f, "atoms({})", joined(items)),
            Expr::Ref(n) => f.write_str(n),
        }
    }
}

impl fmt::Display for Item {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.source {
            Some(src) => write!(f, "{} = {src}", self.name),
            None => f.write_str(&self.name),
        }
    }
}

impl fmt::Display for StateDecl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "state {} = {{}}", self.name);
        }
        let entries = joined(self.entries.iter().map(|(d, v)| format!("{d}: {}", v.render())));
        write!(f, "state {} = {{ {entries} }}", self.name)
    }
}

impl fmt::Display for Query {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Query::Compare(a, b) => write!(f, "compare {a} {b}"),
            Query::Compose(a, b) => write!(f, "compose {a} {b}"),
            Query::Incompat { agent, dim, value, human } => {
                write!(f, "incompat {agent}.{dim} @ {} {human}", value.render())
            }
            Query::Meta(s) => write!(f, "meta {s}"),
            Query::Iota(d) => write!(f, "iota {d}"),
            Query::Hasse(d) => write!(f, "hasse {d}"),
            Query::Run(n) => write!(f, "run {n}"),
        }
    }
}

/// Canonical text: dimensions, then states, then queries, one statement per
/// line and a blank line between non-empty sections.
pub fn serialize(doc: &ScenarioDoc) -> String {
    let sections: [Vec<String>; 3] = [
        doc.dims.iter().map(|(n, e)| format!("dim {n} = {e}")).collect(),
        doc.states.iter().map(StateDecl::to_string).collect(),
        doc.queries.iter().map(Query::to_string).collect(),
    ];
    let blocks: Vec<String> =
        sections.iter().filter(|s| !s.is_empty()).map(|s| s.iter().map(|l| format!("{l}\n")).collect()).collect();
    blocks.join("\n")
}

use std::collections::{BTreeMap, BTreeSet};

/// A parsed scenario file. Positions are not kept, so two documents that
/// differ only in layout compare equal.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ScenarioDoc {
    pub dims: Vec<(String, Expr)>,
    pub states: Vec<StateDecl>,
    pub queries: Vec<Query>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Base {
        elements: BTreeSet<String>,
        order: BTreeSet<(String, String)>,
    },
    Power(Box<Expr>),
    Product(Vec<Expr>),
    Disjoint(Vec<Expr>),
    Union(Vec<Expr>),
    Atoms(Vec<Item>),
    /// An earlier dimension, by name.
    Ref(String),
}

/// An atom, optionally frozen from a whole expression (`F = base{f1, f2}`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Item {
    pub name: String,
    pub source: Option<Expr>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateDecl {
    pub name: String,
    pub entries: BTreeMap<String, Value>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Value {
    Name(String),
    Set(BTreeSet<Value>),
    Tuple(Vec<Value>),
}

impl Value {
    /// The rendering used to look the value up in a dimension. Set members
    /// are sorted by their own rendering.
    pub fn render(&self) -> String {
        match self {
            Value::Name(n) => n.clone(),
            Value::Set(items) => {
                let mut parts: Vec<String> = items.iter().map(Value::render).collect();
                parts.sort();
                format!("{{{}}}", parts.join(", "))
            }
            Value::Tuple(items) => {
                let parts: Vec<String> = items.iter().map(Value::render).collect();
                format!("({})", parts.join(", "))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Query {
    Compare(String, String),
    Compose(String, String),
    /// Whether value `value` along `dim`, acknowledged by `agent`, is
    /// inaccessible to `human`.
    Incompat {
        agent: String,
        dim: String,
        value: Value,
        human: String,
    },
    Meta(String),
    Iota(String),
    Hasse(String),
    Run(String),
}

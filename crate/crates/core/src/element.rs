//! Element identities for dimension carriers.

use std::collections::BTreeSet;
use std::fmt;

/// The payload of an element: a bare symbol, or a composite built by the
/// power-set and product constructors.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Sym(String),
    Set(BTreeSet<ElementId>),
    Tuple(Vec<ElementId>),
}

/// An element of a carrier together with its provenance path.
///
/// The context path records the disjoint unions and dimensions the element
/// was reached through, outermost first. Two elements with the same label
/// but different paths are different elements.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementId {
    pub label: Label,
    pub context: Vec<String>,
}

impl ElementId {
    pub fn new(label: Label, context: Vec<String>) -> Self {
        ElementId { label, context }
    }

    /// A symbol with an empty context, as found in base sets.
    pub fn sym(name: impl Into<String>) -> Self {
        ElementId::new(Label::Sym(name.into()), Vec::new())
    }

    pub fn set(items: impl IntoIterator<Item = ElementId>) -> Self {
        ElementId::new(Label::Set(items.into_iter().collect()), Vec::new())
    }

    pub fn tuple(items: impl IntoIterator<Item = ElementId>) -> Self {
        ElementId::new(Label::Tuple(items.into_iter().collect()), Vec::new())
    }

    /// Returns a copy with `segment` pushed onto the front of the context.
    pub fn within(&self, segment: &str) -> Self {
        let mut context = Vec::with_capacity(self.context.len() + 1);
        context.push(segment.to_string());
        context.extend(self.context.iter().cloned());
        ElementId::new(self.label.clone(), context)
    }

    pub fn as_sym(&self) -> Option<&str> {
        match &self.label {
            Label::Sym(s) => Some(s),
            _ => None,
        }
    }

    /// Renders the label with every context path dropped, recursively.
    ///
    /// Set members are sorted by their rendering so the result is canonical.
    pub fn erased(&self) -> String {
        self.label.erased()
    }

    /// Label rendering prefixed with the context path, joined by `.`.
    pub fn qualified(&self) -> String {
        let mut out = String::new();
        for segment in &self.context {
            out.push_str(segment);
            out.push('.');
        }
        out.push_str(&self.erased());
        out
    }
}

impl Label {
    pub fn erased(&self) -> String {
        match self {
            Label::Sym(s) => s.clone(),
            Label::Set(items) => {
                let mut parts: Vec<String> = items.iter().map(ElementId::erased).collect();
                parts.sort();
                format!("{{{}}}", parts.join(", "))
            }
            Label::Tuple(items) => {
                let parts: Vec<String> = items.iter().map(ElementId::erased).collect();
                format!("({})", parts.join(", "))
            }
        }
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.qualified())
    }
}

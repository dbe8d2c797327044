//! The `.vdl` scenario language.
//!
//! A file declares dimensions, inner states over them, and queries:
//!
//! ```text
//! # comments run to the end of the line
//! dim F = base{f1, f2}
//! dim M = base{m1, m2} order{m1 < m2}
//! dim P = power(F)
//! state K = { F: f1, P: {f1, f2} }
//! state H = { M: m1 }
//! compare K H
//! ```
//!
//! Names must be declared before they are used. [`serialize`] prints a
//! document in canonical form, and parsing that form gives back an equal
//! document.

mod ast;
mod eval;
mod lexer;
mod parser;
mod serialize;

pub use ast::{Expr, Item, Query, ScenarioDoc, StateDecl, Value};
pub use eval::{build_lrv, build_states, eval, Evaluated};
pub use parser::parse;
pub use serialize::serialize;

use thiserror::Error;

/// A syntax error. Positions are 1-based and point into the source text.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{line}:{column}: expected {expected}, found {found}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub expected: String,
    pub found: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DslError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{line}:{column}: {name} is already declared")]
    DuplicateName { name: String, line: usize, column: usize },
    #[error("{line}:{column}: unknown name {name}")]
    UnknownName { name: String, line: usize, column: usize },
    #[error(transparent)]
    Domain(#[from] crate::error::Error),
}

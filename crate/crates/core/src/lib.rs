//! Finite order-theoretic engine for multi-dimensional value
//! representations.
//!
//! Dimensions are finite posets built from specification expressions
//! ([`value_model`]). Agents hold inner states, partial assignments of one
//! element per dimension ([`inner_state`]), which can be compared, composed
//! and tested for incompatibility. [`downset`] checks when replacing a
//! dimension by its strict down-sets preserves joins, [`meta`] classifies
//! states against a declared dimension count, and [`scenarios`] encodes the
//! built-in worked examples. [`dsl`] parses and evaluates `.vdl` scenario
//! files.

pub mod dot;
pub mod downset;
pub mod dsl;
pub mod element;
pub mod error;
pub mod inner_state;
pub mod meta;
pub mod poset;
pub mod scenarios;
pub mod selftest;
pub mod value_model;

pub use element::{ElementId, Label};
pub use error::{Error, Result};
pub use inner_state::{detect_incompatibility, CompareResult, Composition, InnerState, Transition};
pub use poset::{Poset, DEFAULT_MAX_CARRIER};
pub use value_model::{eval_spec, make_lrv, Dimension, Lrv, SpecExpr};

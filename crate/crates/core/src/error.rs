use thiserror::Error;

/// Errors raised by the library's domain operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("relation contains a cycle through {0} and {1}")]
    Cycle(String, String),
    #[error("unknown element {0}")]
    UnknownElement(String),
    #[error("carrier must not be empty")]
    EmptyCarrier,
    #[error("size {size} exceeds the cap of {cap}")]
    SizeExceeded { size: u128, cap: u128 },
    #[error("label {0} occurs in more than one part of a union")]
    LabelCollision(String),
    #[error("index {0} declared more than once")]
    DuplicateIndex(String),
    #[error("unknown index {0}")]
    UnknownIndex(String),
    #[error("value {value} is not an element of dimension {dim}")]
    ValueNotInDimension { dim: String, value: String },
    #[error("value {value} matches several elements of dimension {dim}")]
    AmbiguousValue { dim: String, value: String },
    #[error("index set must not be empty")]
    EmptyIndexSet,
    #[error("index {0} is not in the domain of the state")]
    NotInDomain(String),
    #[error("inner states refer to different representations")]
    LrvMismatch,
    #[error("poset is not a join-semilattice")]
    NotAJoinSemilattice,
    #[error("transition label must be a non-empty subset of the index")]
    InvalidTransition,
    #[error("preference profile leaves {0} undetermined")]
    IncompleteProfile(String),
    #[error("cannot {action} in phase {phase}")]
    Phase { action: &'static str, phase: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

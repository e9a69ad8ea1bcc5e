use thiserror::Error;

use crate::relation::Property;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("relation must have arity at least 1")]
    ZeroArity,
    #[error("relation arity {arity} exceeds the supported maximum of {max}")]
    ArityTooLarge { arity: usize, max: usize },
    #[error("relation has no tuples")]
    EmptyRelation,
    #[error("tuple {tuple:#b} does not fit arity {arity}")]
    TupleOutOfRange { tuple: u64, arity: usize },
    #[error("every position of the relation is a zero position")]
    AllPositionsZero,
    #[error("constraint language is empty")]
    EmptyLanguage,
    #[error("constraint language has {len} relations, more than the maximum of {max}")]
    LanguageTooLarge { len: usize, max: usize },
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("invalid name `{0}`")]
    InvalidName(String),
    #[error("unknown relation `{0}`")]
    UnknownRelation(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("relation `{relation}` has arity {expected} but scope has {found} variables")]
    ArityMismatch {
        relation: String,
        expected: usize,
        found: usize,
    },
    #[error("variable index {index} out of range for {len} variables")]
    VariableOutOfRange { index: usize, len: usize },
    #[error("assignment has {found} bits but instance has {expected} variables")]
    AssignmentLength { expected: usize, found: usize },
    #[error("assignment is not satisfying")]
    NotSatisfying,
    #[error("{what} has size {size}, above the cap of {cap}")]
    TooLarge {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("relation `{relation}` is not {property}")]
    LanguageMismatch {
        relation: String,
        property: Property,
    },
    #[error("relation is essentially monotone; no maximality gadget is constructed for it")]
    EssentiallyMonotone,
    #[error("gadget profile ({n_max0}, {n_max1}, {n_bad}) differs from (1, 1, 0)")]
    VerificationFailed {
        n_max0: String,
        n_max1: String,
        n_bad: String,
    },
    #[error("instance uses relation `{found}` but the gadget is for `{expected}`")]
    RelationMismatch { expected: String, found: String },
    #[error("language has no relation that is not {0}")]
    WitnessMissing(Property),
    #[error("name `{0}` uses the reserved `__g` infix")]
    ReservedName(String),
    #[error("{line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}

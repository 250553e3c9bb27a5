use thiserror::Error;

use crate::algebra::IdentityKind;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("invalid bicharacter: {0}")]
    InvalidBicharacter(String),

    #[error("not a division grading: {0}")]
    NotDivisionGrading(String),

    #[error("{op} does not support identity kind {kind:?}")]
    UnsupportedKind { op: &'static str, kind: IdentityKind },

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("unknown name `{0}`")]
    UnknownName(String),

    #[error("unknown rule `{0}`")]
    UnknownRule(String),

    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("in factor `{factor}`: {msg}")]
    Semantic { factor: String, msg: String },

    #[error("normalization stalled: {0}")]
    Normalization(String),
}

pub type Result<T> = std::result::Result<T, Error>;

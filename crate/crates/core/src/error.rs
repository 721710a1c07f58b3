use thiserror::Error;

use crate::expr::ParseError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generator sets differ: {left} vs {right}")]
    GeneratorMismatch { left: String, right: String },

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("class is not homogeneous of codimension {expected}")]
    NotHomogeneous { expected: usize },

    #[error("rewrite rule does not decrease the monomial order: {0}")]
    NonDecreasingRule(String),

    #[error("singular linear system: {0}")]
    Singular(String),

    #[error("class is outside the span of the pulled-back generators")]
    OutsideSpan,

    #[error("cone is not pointed (contains a line)")]
    NotPointed,

    #[error("cone is not full-dimensional")]
    NotFullDimensional,

    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },

    #[error("cone rank {0} is outside the supported range 2..=4")]
    UnsupportedRank(usize),

    #[error("vector is not in the cone")]
    NotInCone,

    #[error("no generators given")]
    Empty,

    #[error("non-integral value {0}")]
    NonIntegral(String),

    #[error("unknown case `{0}`")]
    UnknownCase(String),

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),

    #[error(transparent)]
    Parse(#[from] ParseError),
}

pub type Result<T> = std::result::Result<T, Error>;

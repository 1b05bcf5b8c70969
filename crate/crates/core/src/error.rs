use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown model `{0}`")]
    UnknownModel(String),

    #[error("model mismatch: expected `{expected}`, found `{found}`")]
    ModelMismatch { expected: String, found: String },

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown basis label `{label}` at position {pos}")]
    UnknownLabel { label: String, pos: usize },

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("model file line {line}: {msg}")]
    ModelFile { line: usize, msg: String },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("degree mismatch: {0}")]
    Degree(String),

    #[error("rank-deficient input: rank {rank} < {needed}")]
    RankDeficient { rank: usize, needed: usize },

    #[error("inconsistent overdetermined system: pair {index} disagrees with the fitted map")]
    Inconsistent { index: usize },

    #[error("non-integer rank {0}")]
    NonIntegerRank(String),

    #[error("rank must be nonzero")]
    ZeroRank,

    #[error("inconsistent codimension: normal bundle rank {rank}, codimension {codim}")]
    Codimension { rank: usize, codim: usize },

    #[error("class uses unverified Fourier-Mukai column `{0}`")]
    UnverifiedColumn(String),

    #[error("divisor is not ample: fails against `{0}`")]
    NotAmple(String),

    #[error("empty input: {0}")]
    Empty(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

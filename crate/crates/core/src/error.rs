use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{n} nodes exceeds the supported maximum of {max}")]
    TooManyNodes { n: usize, max: usize },

    #[error("row {row} has {len} entries, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },

    #[error("node {node} out of range for a digraph on {n} nodes")]
    NodeOutOfRange { node: usize, n: usize },

    #[error("arc multiplicity overflow")]
    MultiplicityOverflow,

    #[error("permutation of length {perm} applied to a digraph on {n} nodes")]
    SizeMismatch { perm: usize, n: usize },

    #[error("not a permutation: {0:?}")]
    NotAPermutation(Vec<usize>),

    #[error("digraph is not {k}-regular")]
    NotRegular { k: usize },

    #[error("bipartite node {side}{node} has degree {degree}, expected 2")]
    BipartiteDegree {
        side: char,
        node: usize,
        degree: usize,
    },

    #[error("unsupported degree k={0}")]
    UnsupportedDegree(usize),

    #[error("enumeration exceeded its time budget of {seconds} s")]
    BudgetExceeded { seconds: u64 },

    #[error("connected counts cover 1..={have}, need 1..={need}")]
    InsufficientPrefix { have: usize, need: usize },

    #[error("{what} is not an exact integer")]
    NonIntegral { what: String },

    #[error("cross-check failed: {what}")]
    CrossCheck { what: String },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: {message}")]
    Inconsistent { line: usize, message: String },
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}

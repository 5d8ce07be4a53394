use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("closure exceeds order cap of {cap} elements")]
    ClosureExceedsCap { cap: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("table is not a Latin square: {0}")]
    NotLatinSquare(String),

    #[error("table has no identity at index 0")]
    NoIdentity,

    #[error("table is not associative at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),

    #[error("invalid parameters for {kind}: {reason}")]
    InvalidParams { kind: String, reason: String },

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("group order {order} exceeds the cap of {cap} for this operation")]
    CapExceeded { order: usize, cap: usize },

    #[error("no prime p = 1 mod {exponent} with p^2 > 4*{order} below the search bound")]
    NoPrimeFound { exponent: u64, order: usize },

    #[error("common eigenspace of dimension {0} could not be split")]
    DegenerateEigenspace(usize),

    #[error("numeric diagonalization ill-conditioned after {0} attempts")]
    IllConditioned(usize),

    #[error("closed form not available for family {0}")]
    UnsupportedFamily(String),

    #[error("invalid arguments: {0}")]
    InvalidArgs(String),

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("duplicate catalog entry name {0:?}")]
    DuplicateName(String),

    #[error("unknown catalog entry {0:?}")]
    UnknownEntry(String),

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

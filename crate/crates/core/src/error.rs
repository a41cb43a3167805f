use thiserror::Error;

/// Errors raised by the algebra engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("inconsistent variable counts: expected {expected}, found {found}")]
    VariableCount { expected: usize, found: usize },
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("ideal is not zero-dimensional and no weight bound was supplied")]
    NotZeroDimensional,
    #[error("generator `{0}` is not homogeneous for the given weights")]
    NotHomogeneous(String),
    #[error("index {index} outside complex range [{lo}, {hi}]")]
    OutOfRange { index: i64, lo: i64, hi: i64 },
    #[error("boundary composite is nonzero at index {0}")]
    NonzeroComposite(i64),
    #[error("ideal is not nilpotent")]
    NotNilpotent,
    #[error("supplied element is a zerodivisor (weight {0})")]
    Zerodivisor(u32),
    #[error("base algebra is not reduced")]
    NotReduced,
    #[error("unsupported ring class: {0}")]
    Unsupported(String),
    #[error("chain space of dimension {needed} exceeds the budget of {budget}")]
    Budget { needed: usize, budget: usize },
    #[error("a truncation bound is required for infinite-dimensional input")]
    MissingBound,
    #[error("extension is not module-finite within the search bound {0}")]
    NotModuleFinite(usize),
    #[error("weight {weight} exceeds the truncation bound {bound}")]
    WeightOverflow { weight: u32, bound: u32 },
    #[error("invalid numerical semigroup: {0}")]
    InvalidSemigroup(String),
    #[error("table has no entry for n = {0}")]
    MissingEntry(i64),
    #[error("degree {degree} beyond the computed truncation {top}")]
    BeyondTruncation { degree: usize, top: usize },
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

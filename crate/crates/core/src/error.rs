use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("empty entry at position {0}")]
    EmptyEntry(usize),
    #[error("malformed entry `{0}`")]
    Malformed(String),
    #[error("base {base} out of range 1..={n}")]
    BaseOutOfRange { base: usize, n: usize },
    #[error("duplicate base {0}")]
    DuplicateBase(usize),
    #[error("color {color} out of range for r = {r}")]
    ColorOutOfRange { color: usize, r: usize },
    #[error("signed shorthand `-b` requires r = 2 (got r = {0})")]
    SignedShorthand(usize),
    #[error("number of colors must be at least 1")]
    ZeroColors,
    #[error("group mismatch: ({r1}, {n1}) vs ({r2}, {n2})")]
    Mismatch { r1: usize, n1: usize, r2: usize, n2: usize },
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("enumeration of {size} elements exceeds cap {cap}")]
    CapExceeded { size: u128, cap: u64 },
    #[error("not an even-signed permutation: {0}")]
    NotEvenSigned(String),
    #[error("invalid code: {0}")]
    InvalidCode(String),
    #[error("invalid Ferrers bound: {0}")]
    InvalidBound(String),
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("unknown theorem id `{0}`")]
    UnknownTheorem(String),
    #[error("unknown statistic `{0}`")]
    UnknownStatistic(String),
    #[error("unknown generating set `{0}`")]
    UnknownGenset(String),
}

pub type Result<T> = std::result::Result<T, Error>;

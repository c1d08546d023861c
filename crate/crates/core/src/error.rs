use thiserror::Error;

/// Errors raised by the library.
///
/// `Invariant` marks a broken internal guarantee rather than bad input; the
/// CLI maps it to a distinct exit code.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("empty input")]
    EmptyInput,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}, column `{column}`: cannot parse `{value}` as a number")]
    MalformedNumber {
        line: usize,
        column: String,
        value: String,
    },
    #[error("duplicate atomic number {0}")]
    DuplicateAtomicNumber(u32),
    #[error("duplicate symbol `{0}`")]
    DuplicateSymbol(String),
    #[error("unknown property `{0}`")]
    UnknownProperty(String),
    #[error("property `{0}` has zero spread")]
    ZeroSpread(String),
    #[error("property `{0}` has fewer than two values")]
    TooFewValues(String),
    #[error("atomic number {0} is not in the layout")]
    UnknownAtomicNumber(u32),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("invalid shell (n={n}, l={l})")]
    InvalidShell { n: i64, l: i64 },
    #[error("invalid order parameter: {0}")]
    InvalidOrder(String),
    #[error("poset of {0} elements is too large (limit {1})")]
    TooLarge(usize, usize),
    #[error("at least {needed} usable items required, got {got}")]
    TooFewItems { needed: usize, got: usize },
    #[error("{0} clusters cannot be reached by a height cut; attainable: {1:?}")]
    UnattainableCut(usize, Vec<usize>),
    #[error("`{0}` is not a point of the space")]
    NotInSpace(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

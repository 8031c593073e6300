use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("operands live in different polynomial rings")]
    RingMismatch,
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("too many variables ({0}); at most {max} are supported", max = crate::monomial::MAX_VARS)]
    TooManyVariables(usize),
    #[error("colon by zero ideal")]
    ColonByZero,
    #[error("{0}: input is not homogeneous")]
    NotHomogeneous(&'static str),
    #[error("{0}: ideal is the unit ideal")]
    UnitIdeal(&'static str),
    #[error("could not find linear sop")]
    NoLinearSop,
    #[error("no regular sequence found")]
    NoRegularSequence,
    #[error("ring is not Cohen-Macaulay (run the CM length test first)")]
    NotCohenMacaulay,
    #[error("ring has dimension 0; a positive-dimensional ring is required")]
    ZeroDimensional,
    #[error("ideal is not primary to the maximal ideal")]
    NotMPrimary,
    #[error("duplicate point: points {0} and {1} coincide")]
    DuplicatePoint(usize, usize),
    #[error("unknown suite: {0}")]
    UnknownSuite(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),
    #[error("internal consistency error: {0}")]
    Internal(String),
}

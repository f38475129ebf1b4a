use thiserror::Error;

/// Errors shared by every layer of the crate.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("field order {0} exceeds the supported table size")]
    FieldTooLarge(u128),

    #[error("modulus must be monic of degree {expected}, got {got}")]
    BadModulus { expected: usize, got: String },

    #[error("modulus is reducible")]
    ReducibleModulus,

    #[error("element {0} is out of range for this field")]
    ElementOutOfRange(u64),

    #[error("0 has no inverse")]
    ZeroInverse,

    #[error("{0} does not divide {1}")]
    NotADivisor(usize, usize),

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("the zero polynomial is not allowed here")]
    ZeroPolynomial,

    #[error("polynomial must be monic")]
    NotMonic,

    #[error("coefficient {0} lies outside the expected subfield")]
    CoefficientOutsideSubfield(u64),

    #[error("search budget exhausted after {searched} candidates")]
    BudgetExhausted { searched: u64 },

    #[error("no module basis found within the candidate budget")]
    BasisNotFound,

    #[error("element of rank {rank} is not invertible (full rank is {full})")]
    NotInvertible { rank: usize, full: usize },

    #[error("mismatched contexts: {0}")]
    ContextMismatch(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

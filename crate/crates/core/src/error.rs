use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("no monic irreducible polynomial of degree {k} over F_{p}")]
    NoIrreducibleFound { p: u32, k: u32 },
    #[error("field F_{p}^{k} exceeds the supported size")]
    FieldTooLarge { p: u32, k: u32 },
    #[error("operation undefined on the zero element")]
    ZeroElement,
    #[error("elements or maps live over different fields")]
    FieldMismatch,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("map has a nonzero constant term; it does not fix the origin")]
    NonzeroConstantTerm,
    #[error("every component vanishes at the point; the map is not defined there")]
    IndeterminatePoint,
    #[error("projective components must be homogeneous of one common degree")]
    NotHomogeneous,
    #[error("ideal is not zero-dimensional at the origin")]
    NotZeroDimensional,
    #[error("Hilbert-Samuel function did not stabilize below degree {0}")]
    NoStabilization(usize),
    #[error("iterate {n} is degenerate at the point")]
    DegenerateIterate { n: u64 },
    #[error("unsupported field for this operation: {0}")]
    UnsupportedField(String),
    #[error("eigenvalue must be nonzero")]
    ZeroEigenvalue,
    #[error("multiplicity algorithms disagree: standard basis {standard}, truncation {truncated}")]
    OracleMismatch { standard: u64, truncated: u64 },
    #[error("invalid query: {0}")]
    InvalidQuery(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

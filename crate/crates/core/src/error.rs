use thiserror::Error;

/// Errors raised by the algebra engine.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("division by zero in F_{0}")]
    DivisionByZero(u32),
    #[error("characteristic {0} is not prime")]
    CompositeCharacteristic(u64),
    #[error("characteristic {0} does not fit in a machine word prime field")]
    CharacteristicTooLarge(u64),
    #[error("polynomial does not belong to this ring: {0}")]
    RingMismatch(String),
    #[error("too many variables: {0} (at most {max})", max = crate::monomial::MAX_VARS)]
    TooManyVariables(usize),
    #[error("variable weights must be positive")]
    NonPositiveWeight,
    #[error("{q} is not a power of the characteristic {p}")]
    BadFrobeniusPower { q: u64, p: u32 },
    #[error("input is not homogeneous: {0}")]
    Inhomogeneous(String),
    #[error("homological degree {requested} needs a resolution longer than the cap {cap}")]
    CapExceeded { requested: usize, cap: usize },
    #[error("operation undefined on the zero module")]
    ZeroModule,
    #[error("torsion via double duals requires a reduced ring")]
    UnsupportedNonReduced,
    #[error("Hilbert-Samuel function did not stabilize within {0} steps")]
    NonStabilized(usize),
    #[error("saturation did not stabilize within {0} colon steps")]
    SaturationDiverged(usize),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("invalid minimal prime: {0}")]
    InvalidPrime(String),
    #[error("minimal primes are unknown for this ring; declare them")]
    MinimalPrimesUnknown,
    #[error("computation too large: {0}")]
    TooLarge(String),
    #[error("parse error at column {col}: {msg}")]
    Parse { col: usize, msg: String },
    #[error("dimension mismatch: {0}")]
    Shape(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, AlgebraError>;

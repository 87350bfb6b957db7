use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),

    #[error("{divisor} does not divide {modulus}")]
    NotADivisor { divisor: u64, modulus: u64 },

    #[error("zero has no p-adic valuation")]
    ZeroInput,

    #[error("polynomial is not integer valued (binomial coefficient of degree {degree} is not an integer)")]
    NotIntegerValued { degree: usize },

    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("variable index {index} out of range for {nvars} variables")]
    BadVariableIndex { index: usize, nvars: usize },

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("no power of the difference operator up to {bound} annihilates the map")]
    NotAnnihilated { bound: usize },

    #[error("bad domain: {0}")]
    BadDomain(String),

    #[error("bad codomain: {0}")]
    BadCodomain(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("domain moduli involve more than one prime")]
    MixedPrimes,

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("coprimality violated: {0}")]
    CoprimalityViolation(String),

    #[error("polyfract is not {period}-periodic")]
    NotPeriodic { period: u64 },

    #[error("infinite group (modulus 0) not allowed here")]
    InfiniteGroup,

    #[error("map is not polyfractal: {0}")]
    NotPolyfractal(String),

    #[error("group is not cyclic")]
    NotCyclic,

    #[error("value {value} out of range for modulus {modulus}")]
    OutOfRange { value: String, modulus: u64 },

    #[error("search space of {size} exceeds the limit {limit}")]
    TooLarge { size: String, limit: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;

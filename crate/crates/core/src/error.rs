use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(usize),
    #[error("modulus polynomial is reducible over F_{p}")]
    ReduciblePolynomial { p: usize },
    #[error("invalid modulus polynomial: {0}")]
    InvalidModulus(String),
    #[error("field order {0} is not supported (must be a prime power no larger than 256)")]
    UnsupportedOrder(usize),
    #[error("division by zero")]
    DivisionByZero,
    #[error("scalar must be nonzero")]
    ScalarZero,
    #[error("element code {code} is out of range for q={q}")]
    InvalidElement { code: usize, q: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("objects are defined over different fields")]
    FieldMismatch,
    #[error("duplicate element at positions {first} and {second}")]
    DuplicateElement { first: usize, second: usize },
    #[error("h={h} exceeds the set size {size}")]
    HTooLarge { h: usize, size: usize },
    #[error("h must be at least 1")]
    HZero,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("search space of {size} vectors exceeds the exhaustive cap")]
    SpaceTooLarge { size: u128 },
    #[error("enumeration needs {needed} items, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("minimum distance {found} is below the required {required}")]
    DistanceTooSmall { required: usize, found: usize },
    #[error("parity-check columns {first} and {second} coincide or one is zero")]
    DuplicateColumns { first: usize, second: usize },
    #[error("redundancy n-k={redundancy} is smaller than 2h={needed}")]
    RedundancyTooSmall { redundancy: usize, needed: usize },
    #[error("the set is not an S_h-linear set")]
    NotShLinear,
    #[error("code dimension {t} outside the window [{low}, {high}]")]
    DimensionWindowViolated { t: usize, low: usize, high: usize },
    #[error("no table entry witnesses the requested bound")]
    NoWitness,
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("i/o error: {0}")]
    Io(String),
    #[error("line {line}: entry [{n},{k},{d}] violates the Singleton bound")]
    SingletonViolation {
        line: usize,
        n: usize,
        k: usize,
        d: usize,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

use thiserror::Error;

/// Errors raised anywhere in the lab.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic {0} is even; only odd characteristic is supported")]
    EvenCharacteristic(u64),
    #[error("modulus {0:?} is reducible over F_{1}")]
    ReducibleModulus(Vec<u32>, u32),
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("unsupported field: p={p}, k={k} ({reason})")]
    UnsupportedDegree { p: u64, k: u32, reason: &'static str },
    #[error("element index {0} is out of range for this field")]
    InvalidElement(u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("character-sum parameter must be nonzero")]
    ZeroParameter,
    #[error("{what}: size {size} exceeds budget {limit}")]
    BudgetExceeded {
        what: &'static str,
        size: u128,
        limit: u128,
    },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("Fourier residual {residual:e} exceeds tolerance {tolerance:e}")]
    ResidualTooLarge { residual: f64, tolerance: f64 },
    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),
    #[error("dimension {0} is even; this bound needs odd d >= 3")]
    EvenDimension(usize),
    #[error("dimension {0} is odd; this requires even d")]
    OddDimension(usize),
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("-1 is a square in F_{0}")]
    MinusOneIsSquare(u32),
    #[error("-1 is not a square in F_{0}")]
    MinusOneNotSquare(u32),
    #[error("factor set is empty")]
    EmptyFactor,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("not a generalized Cartan matrix: {0}")]
    NotGcm(String),
    #[error("Cartan matrix is not symmetrizable")]
    NotSymmetrizable,
    #[error("Cartan matrix is singular")]
    SingularCartan,
    #[error("datum is not of finite type: {0}")]
    InfiniteType(String),
    #[error("index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("invalid double word: {0}")]
    InvalidWord(String),
    #[error("word is not a reduced word for the longest element")]
    NotReduced,
    #[error("division by zero")]
    DivisionByZero,
    #[error("not divisible")]
    NotDivisible,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("divisor must be a non-constant polynomial")]
    ConstantDivisor,
    #[error("variable {0} has a negative exponent but its image is not invertible")]
    NonInvertibleSubstitution(usize),
    #[error("variable count mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("vertex {0} is frozen")]
    FrozenVertex(usize),
    #[error("exchange at vertex {0} is not Laurent")]
    LaurentViolation(usize),
    #[error("invalid seed: {0}")]
    InvalidSeed(String),
    #[error("seed enumeration exceeded the cap of {0} seeds")]
    CapExceeded(usize),
    #[error("frozen valuation differs between seeds: {first} vs {second}")]
    SeedDisagreement { first: i64, second: i64 },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("no generic sample found after {0} attempts")]
    DegenerateSample(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

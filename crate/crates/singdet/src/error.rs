use thiserror::Error;

/// Errors raised by the library. Every variant is a rejected precondition;
/// none of them signal an internal inconsistency.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotOddPrime(String),
    #[error("{0} is not a prime")]
    NotPrime(String),
    #[error("argument {0} is divisible by 2 or 3")]
    NotCoprimeToSix(String),
    #[error("{a} and {q} are not coprime")]
    NotCoprime { a: String, q: String },
    #[error("modulus {0} is even")]
    EvenModulus(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("diagonal entry {0} is odd")]
    OddDiagonal(usize),
    #[error("matrix is singular")]
    Singular,
    #[error("determinant is even")]
    EvenDeterminant,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("parity condition violated: {0}")]
    Parity(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("crossing budget exceeded: {crossings} > {budget}")]
    Budget { crossings: usize, budget: usize },
    #[error("invalid diagram: {0}")]
    Diagram(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("missing input: {0}")]
    Missing(String),
}

pub type Result<T> = std::result::Result<T, Error>;

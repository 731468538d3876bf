use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("characteristic {0} exceeds the supported maximum")]
    PrimeTooLarge(u32),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Arith(#[from] ArithError),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("shape {0} has more than two parts")]
    NotTwoRow(String),

    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: u32, right: u32 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The standard tableaux failed to project onto a basis of a weight space
    /// of the quotient. This can only happen through an internal bug.
    #[error(
        "standard tableaux do not form a basis of weight space {weight:?} of shape {shape}: \
         rank {rank}, {nonstandard} nonstandard monomials"
    )]
    BasisMismatch { shape: String, weight: Vec<u32>, rank: usize, nonstandard: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

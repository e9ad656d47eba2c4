use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field too large: {p}^{f} exceeds 2^20")]
    FieldTooLarge { p: u64, f: u32 },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("rank deficient lattice basis (rank {rank}, expected {expected})")]
    RankDeficient { rank: usize, expected: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("algebra not visibly nilpotent up to degree {0}")]
    NotNilpotent(usize),
    #[error("invalid fixture: {0}")]
    Fixture(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

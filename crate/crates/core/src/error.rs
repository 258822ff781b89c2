use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("truncation order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("series has non-unit constant term and cannot be inverted")]
    InvalidInverse,
    #[error("{0} is not an odd prime")]
    InvalidPrime(u64),
    #[error("abacus does not describe a bar-core: {0}")]
    InvalidAbacus(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("prime {0} is not congruent to 5 or 11 modulo 24")]
    WrongResidueClass(u64),
    #[error("specialization {0} leaves negative powers of q")]
    IllFormedSpecialization(String),
    #[error("unsupported specialization: {0}")]
    UnsupportedSpecialization(String),
    #[error("series of order {have} is too short, order {need} required")]
    OrderTooSmall { have: usize, need: usize },
    #[error("coefficient {index} is odd, cannot halve exactly")]
    InexactHalving { index: usize },
    #[error("degree formulas disagree for {0}")]
    DegreeMismatch(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

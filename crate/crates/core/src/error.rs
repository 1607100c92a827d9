use thiserror::Error;

/// Errors raised by the arithmetic, search and isometry layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus must be positive")]
    ZeroModulus,

    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: usize, right: usize },

    #[error("{k} is not coprime to {n}; sigma_k is not an automorphism")]
    NotCoprime { k: i64, n: usize },

    #[error("{0} is not prime")]
    NotPrime(usize),

    #[error("table entry {value} at position {index} is outside [0, {n})")]
    EntryOutOfRange { index: usize, value: usize, n: usize },

    #[error("table has length {len}, expected {n}")]
    TableLength { len: usize, n: usize },

    #[error("coefficient vector has length {len}, expected {expected}")]
    CoeffLength { len: usize, expected: usize },

    #[error("function is not a bijection on Z_{0}")]
    NotBijection(usize),

    #[error("exponent sum is empty")]
    EmptySum,

    #[error("search space of {required} items exceeds budget {budget}")]
    BudgetExceeded { required: String, budget: u64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arithmetic overflow while computing {0}")]
    Overflow(&'static str),

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("zero has no multiplicative inverse")]
    ZeroInverse,

    #[error("degenerate geometry: {0}")]
    Degenerate(String),

    #[error("unsatisfiable constraint: {0}")]
    Unsatisfiable(String),

    #[error("genericity check failed after {attempts} samples ({what}); try a larger prime")]
    Genericity { attempts: usize, what: String },

    #[error("unsupported residual/trace split: {0}")]
    UnsupportedSplit(String),
}

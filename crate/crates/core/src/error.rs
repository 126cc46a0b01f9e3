use thiserror::Error;

/// Errors produced by gradlab computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("invalid coset table: {0}")]
    InvalidTable(String),

    #[error("resource exhausted: {what} would exceed the limit of {limit}")]
    ResourceExhausted { what: String, limit: u64 },

    #[error("coset table does not describe a normal subgroup")]
    NotNormal,

    #[error("element has order {actual} in the quotient, expected {expected}")]
    OrderMismatch { expected: u64, actual: u64 },

    #[error("{0} is not a prime")]
    InvalidPrime(u64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    pub(crate) fn exhausted(what: impl Into<String>, limit: u64) -> Self {
        Error::ResourceExhausted {
            what: what.into(),
            limit,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Returns `Ok(())` when `p` is prime.
pub fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::InvalidPrime(p))
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

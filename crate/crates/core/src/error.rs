use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parts sum to {sum}, expected {total}")]
    PartsMismatch { total: i64, sum: i64 },

    #[error("factorial of negative number {0}")]
    NegativeFactorial(i64),

    #[error("coefficient ({i}, {j}, {l}) lies outside truncation {orders:?}")]
    OutOfTruncation { i: usize, j: usize, l: usize, orders: [usize; 3] },

    #[error("series is not invertible: {0}")]
    NotInvertible(String),

    #[error("variable {0} has no numeric assignment")]
    Unassigned(String),

    #[error("{what} exceeds enumeration bound {bound}")]
    BoundExceeded { what: String, bound: usize },

    #[error("invalid segment type: {0}")]
    InvalidType(String),

    #[error("expected an integer result, got {0}")]
    NotIntegral(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("fixed point did not converge after {0} iterations")]
    NonConvergence(usize),

    #[error("undefined: {0}")]
    Undefined(String),
}

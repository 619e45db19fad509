use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid pattern: {0}")]
    InvalidPattern(String),
    #[error("series orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("division by a series that is zero up to order {order}")]
    DivisionByZero { order: usize },
    #[error("dividend valuation {numerator} is below divisor valuation {denominator}")]
    NegativeValuation { numerator: usize, denominator: usize },
    #[error("insufficient order: needed {needed}, have {available}")]
    InsufficientOrder { needed: i64, available: i64 },
    #[error("degenerate specialization: {0}")]
    KernelDegenerate(String),
    #[error("table size mismatch: {0}")]
    TableMismatch(String),
    #[error("{what} = {n} is out of range (limit {limit})")]
    OutOfRange {
        what: &'static str,
        n: usize,
        limit: usize,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

//! Crate-wide error type.

use thiserror::Error;

/// Errors surfaced by the exact-arithmetic and certificate layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// `factorize(0)` or another operation that needs a positive integer.
    #[error("expected a positive integer, got zero")]
    ZeroValue,

    /// A parameter that must be prime is not.
    #[error("{0} is not prime")]
    NotPrime(String),

    /// Modular-order operations require coprime arguments.
    #[error("{0} and {1} are not coprime")]
    NotCoprime(String, String),

    /// Base for primitive-prime-divisor machinery must satisfy |n| > 1.
    #[error("base {0} must have absolute value > 1")]
    BaseTooSmall(i64),

    /// The requested unitary group is not simple.
    #[error("U_{n}({q}) is not a simple group")]
    NotSimple { n: u32, q: u64 },

    /// Malformed or out-of-range parameters.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// Index or range violation (D_m sets, degree-sequence positions, ...).
    #[error("out of range: {0}")]
    OutOfRange(String),

    /// A degree sequence that must be graphic is not.
    #[error("sequence {0:?} is not graphic")]
    NotGraphic(Vec<u32>),

    /// A vertex pair that must be nonadjacent is adjacent.
    #[error("vertices {0} and {1} are adjacent")]
    AdjacentPair(u64, u64),

    /// A μ element does not divide the group order it is paired with.
    #[error("spectrum element {element} does not divide the order {order}")]
    SpectrumOrderMismatch { element: String, order: String },

    /// Query outside an embedded table's row set.
    #[error("no table data for q = {0}")]
    OutOfTable(String),

    /// An internal cross-check failed; indicates a bug, never user error.
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

/// Convenience alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;

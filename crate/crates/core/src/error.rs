//! Error types shared across the crate.

use thiserror::Error;

/// Errors raised by ring, polynomial and derivation operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("both inputs are zero")]
    BothZero,
    #[error("division left a remainder")]
    NotDivisible,
    #[error("divisor is zero")]
    DivisorZero,
    #[error("operation not supported over this ring: {0}")]
    UnsupportedRing(String),
    #[error("operation requires exactly 3 variables, got {0}")]
    DimensionError(usize),
    #[error("iteration bound {bound} exceeded: {context}")]
    BoundExceeded { bound: usize, context: String },
    #[error("degree of the zero polynomial is -infinity")]
    ZeroInput,
    #[error("polynomial is not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("variable image is not in the kernel: {0}")]
    NotInKernel(String),
    #[error("induced derivation has no linear kernel form")]
    NoLinearKernel,
    #[error("no linear preimage with nonzero scale factor")]
    NoPreimage,
    #[error("shape violation: {0}")]
    ShapeViolation(String),
    #[error("top graded part is not a perfect {n}-th power")]
    NotAPthPower { n: u32 },
    #[error("rewrite into powers of the slice candidate failed at z-degree {level}")]
    RewriteNonExact { level: usize },
    #[error("normal-form iteration budget exhausted after {0} rounds")]
    NonTermination(usize),
    #[error("coordinate change is not invertible over the ring")]
    NotInvertible,
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

//! Error type shared by every module of the crate.

use thiserror::Error;

/// Failures reported by series arithmetic, recognizers, lattice routines and
/// invariant tables.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A series whose leading coefficient cannot be inverted.
    #[error("not invertible: {0}")]
    NotInvertible(String),

    /// An argument outside the domain of an operation (exp of a series with
    /// constant term, log of a series not starting at 1, and similar).
    #[error("domain error: {0}")]
    Domain(String),

    /// A requested coefficient lies beyond the precision that was computed.
    #[error("truncation shortfall: {quantity} needs {needed} but the bound is {available}")]
    TruncationShortfall {
        quantity: String,
        needed: i64,
        available: i64,
    },

    /// A linear system has too few equations for a unique answer.
    #[error("underdetermined: {0}")]
    Underdetermined(String),

    /// A vanishing check does not have enough equations to decide.
    #[error("inconclusive: {0}")]
    Inconclusive(String),

    /// A z-series with odd exponents cannot be read as a genus expansion.
    #[error("not a genus expansion: odd exponent {0} present")]
    NotGenusExpansion(i64),

    /// A Laurent polynomial was expected to be symmetric under p -> 1/p.
    #[error("asymmetric Laurent polynomial: coefficient of p^{0} differs from p^-{0}")]
    Asymmetric(i64),

    /// An invariant triple that is not realized by any Mukai vector.
    #[error("no such orbit: {0}")]
    NoSuchOrbit(String),

    /// A reflection vector without square -2.
    #[error("reflection vector has square {0}, expected -2")]
    WrongNorm(i64),

    /// The zero vector where a nonzero vector is required.
    #[error("zero vector has no invariants")]
    ZeroVector,

    /// A Gram matrix that is not symmetric positive definite.
    #[error("gram matrix is not symmetric positive definite")]
    NotPositiveDefinite,

    /// Two independent constructions of the same object disagree.
    #[error("consistency failure: {0}")]
    Consistency(String),

    /// Any other invalid argument.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Convenience constructor for [`Error::TruncationShortfall`].
    pub fn shortfall(quantity: impl Into<String>, needed: i64, available: i64) -> Self {
        Error::TruncationShortfall {
            quantity: quantity.into(),
            needed,
            available,
        }
    }
}

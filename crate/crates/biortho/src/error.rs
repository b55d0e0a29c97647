//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Requested a family member below the family's base index.
    #[error("index {index} is below the family's base index {base}")]
    IndexBelowBase { index: usize, base: usize },

    /// Monomial coefficients for this member would overflow the extended
    /// floating range; use the log-domain norm routines instead.
    #[error("degree {degree} exceeds the monomial representation range")]
    DegreeOutOfRange { degree: usize },

    /// T^-1 applied to a vector whose decay rate would leave L^2.
    #[error("rate {rate} is not above 1/4: vector is outside the domain of T^-1")]
    RateDomain { rate: f64 },

    /// Sum or difference of Gaussian-polynomial vectors with different decay rates.
    #[error(
        "decay rates {left} and {right} differ; vectors live in different representable classes"
    )]
    RateMismatch { left: f64, right: f64 },

    /// Identity checks involving index shifts refuse the truncation edge.
    #[error("index {index} touches the truncation edge {truncation}")]
    TruncationEdge { index: usize, truncation: usize },

    /// A matrix expected to be positive semidefinite came out indefinite
    /// beyond rounding (square-root construction).
    #[error("matrix is indefinite: min eigenvalue {min_eigenvalue:e} vs scale {scale:e}")]
    IndefiniteMatrix { min_eigenvalue: f64, scale: f64 },

    /// Eigensolver did not converge; signals a numerical defect, not a
    /// domain error.
    #[error("symmetric eigensolver failed to converge (dimension {dim})")]
    EigenFailure { dim: usize },

    /// A scalar sequence violated a structural requirement (positivity,
    /// ladder monotonicity, alpha_1 = 0, ...).
    #[error("invalid scalar sequence: {reason}")]
    InvalidSequence { reason: String },

    /// Malformed user-facing specification (CLI vector/operator/sequence specs).
    #[error("invalid specification: {reason}")]
    InvalidSpec { reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;

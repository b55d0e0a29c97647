//! Biorthogonal quasi-basis families, the non-self-adjoint multiplier
//! operators built from them, and a claim-by-claim verification suite, all
//! realized at finite truncation.
//!
//! The library constructs three concrete biorthogonal pairs — two in a
//! truncated coefficient space and one made of Hermite functions with
//! mismatched Gaussian decay rates — together with the multiplier, metric,
//! and ladder operators they generate. Every identity the construction is
//! supposed to satisfy (biorthogonality, eigenrelations, factorization,
//! intertwining, adjoint pairing, quasi-basis resolutions, closed-form norms
//! and their growth) is checked numerically and reported as a structured
//! [`verify::VerificationReport`].

pub mod error;
pub mod families;
pub mod multipliers;
pub mod seqspace;
pub mod specfun;
pub mod verify;

pub(crate) mod dd;

pub use error::{Error, Result};
pub use seqspace::{AmbientVector, CoeffVector, GaussPolyVector, ScalarSequence, C64};

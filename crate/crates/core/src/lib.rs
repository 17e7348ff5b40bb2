//! Exact bideterminant bases and straightening for `Mat_n`, the symplectic
//! monoid `SpM_n`, the reductive monoid `M ⊂ Mat_m × Mat_m`, the groups
//! `Sp_n` and `GL_m`, plus walled Brauer double centraliser checks.

pub mod bidet;
pub mod duality;
pub mod exactla;
pub mod exec;
pub mod exterior;
pub mod polyring;
pub mod shapes;
pub mod tableaux;

pub use exactla::{ExactMatrix, Rational};
pub use exec::Exec;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("inadmissible: {0}")]
    Inadmissible(String),
    #[error("invalid entry: {0}")]
    InvalidEntry(String),
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
    #[error("missing variable {0}")]
    MissingVariable(String),
    #[error("context mismatch: {0}")]
    ContextMismatch(String),
    #[error("set is not saturated: {0}")]
    NotSaturated(String),
    #[error("inhomogeneous element")]
    Inhomogeneous,
    #[error("sampling failed: {0}")]
    Sampling(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

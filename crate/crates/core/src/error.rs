use thiserror::Error;

/// Errors raised by the toolkit.
///
/// [`Error::Parse`] is reserved for malformed textual input; every other
/// variant is a domain error on well-formed input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("zero polynomial is not allowed here")]
    ZeroPolynomial,

    #[error("denominator vanishes at the origin; no power-series expansion exists")]
    PoleAtOrigin,

    #[error("series coefficient {index} is not an integer: {value}")]
    NonIntegralSeries { index: usize, value: String },

    #[error("signature {signature} is not fuchsian (orbifold Euler characteristic {chi} >= 0)")]
    NonFuchsian { signature: String, chi: String },

    #[error("classes belong to different lattices")]
    LatticeMismatch,

    #[error("coordinate vector has length {got}, lattice rank is {expected}")]
    RankMismatch { expected: usize, got: usize },

    #[error("operation requires a lattice of a weighted curve, not its one-point extension")]
    ExtendedLatticeUnsupported,

    #[error("Cartan matrix is singular")]
    SingularMatrix,

    #[error("Coxeter transformation is not integral; the Cartan matrix is broken")]
    NonIntegralCoxeter,

    #[error("slope of the zero class is undefined")]
    ZeroClass,

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl Error {
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;

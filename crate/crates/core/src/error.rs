use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element has {found} coordinates, group has {expected} generators")]
    LengthMismatch { expected: usize, found: usize },

    #[error("χ has finite order")]
    FiniteOrder,

    #[error("quotient is infinite")]
    InfiniteQuotient,

    #[error("inadmissible model: {0}")]
    Inadmissible(String),

    #[error("singular exponent matrix")]
    SingularMatrix,

    #[error("non-positive q-degree solution: {0}")]
    NonPositiveWeights(String),

    #[error("polynomial is not homogeneous of degree χ: {0}")]
    NotHomogeneous(String),

    #[error("non-isolated critical point: {0}")]
    NonIsolated(String),

    #[error("log Calabi-Yau direction: q_0 = 0, graded pieces infinite-dimensional")]
    LogCalabiYau,

    #[error("r_max = {0} is too small to certify anything (need r_max >= 2)")]
    RMaxTooSmall(usize),

    #[error("infinite path algebra: quiver has an oriented cycle")]
    InfinitePathAlgebra,
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Errors raised by torus arithmetic, seed mutation and the presented ring.
///
/// Vertex and row/column labels carried by variants are 1-based, matching
/// the way exchange matrices are labelled in the literature and on the CLI.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not skew-symmetric at ({row}, {col})")]
    NotSkewSymmetric { row: usize, col: usize },

    #[error("operands live in tori with different skew forms")]
    FormMismatch,

    #[error("exact division failed: quotient is not a Laurent polynomial")]
    NotDivisible,

    #[error("pair is not compatible at (i={row}, j={col}): sum is {value}")]
    NotCompatible { row: usize, col: usize, value: i64 },

    #[error("vertex {0} is not exchangeable")]
    NotExchangeable(usize),

    #[error("generator index {0} is not an even label in [0, 2n]")]
    BadIndex(u32),

    #[error("Grothendieck elements of different sizes ({0} vs {1})")]
    SizeMismatch(usize, usize),

    #[error("generation identity for Y_{0} does not re-expand")]
    IdentityFailed(usize),

    #[error("element is not in the subalgebra generated by the X-generators")]
    NotInSubalgebra,

    #[error("seeds with the same cluster disagree on Λ")]
    SeedCollision,

    #[error("invalid size n = {0}; need n >= 1")]
    InvalidSize(usize),

    #[error("malformed input: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("monomial of degree {degree} outside the range ({low}, {high}]")]
    DegreeOutOfRange { degree: usize, low: i32, high: usize },

    #[error("permutation is not induced by an affine map")]
    NotAffine,

    #[error("n = {n} exceeds the limit {limit} for this provider")]
    TooLarge { n: usize, limit: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("cell data failed validation: {0}")]
    Validation(String),

    /// The weighted fixed-point sum is not a multiple of the group order,
    /// which means the cell decomposition is broken.
    #[error("Burnside sum is not divisible by |AGL({n},2)|")]
    InexactDivision { n: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not symmetric (residual {0:.3e})")]
    NotSymmetric(f64),
    #[error("matrix is not antisymmetric (residual {0:.3e})")]
    NotAntisymmetric(f64),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("kinetic matrix is singular")]
    SingularM,
    #[error("state became non-finite at t = {0}")]
    NonFinite(f64),
    #[error("bad shape: {0}")]
    BadShape(String),
    #[error("diagonalizing rotation is undefined for gamma = 0 with C != 0")]
    GammaZeroUndefined,
    #[error("parameters lie on a singular boundary: {0}")]
    BoundarySingular(String),
    #[error("region mismatch: expected {expected}, found {found}")]
    RegionMismatch { expected: String, found: String },
    #[error("operator degree would exceed two")]
    DegreeOverflow,
    #[error("operator is not hermitian (residual {0:.3e})")]
    NotHermitian(f64),
    #[error("grid too coarse: {0}")]
    GridTooCoarse(String),
    #[error("complex branch: {0}")]
    ComplexBranch(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

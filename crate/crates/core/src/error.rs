use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("singular {size}x{size} system")]
    SingularSystem { size: usize },

    #[error("unisolvence violated for (m, n) = ({m}, {n}): DOF matrix is singular")]
    UnisolvenceViolation { m: usize, n: usize },

    #[error("degenerate simplex: vertex coordinates are affinely dependent")]
    DegenerateSimplex,

    #[error("unsupported dimension {0}")]
    UnsupportedDimension(usize),

    #[error("no quadrature rule of degree {degree} in dimension {n}")]
    UnsupportedDegree { n: usize, degree: usize },

    #[error("invalid mesh divisions {0}")]
    InvalidDivisions(usize),

    #[error("singular change of normal frame on face {face:?}")]
    FrameMismatch { face: Vec<usize> },

    #[error("evaluation failed at {point:?}: {reason}")]
    Evaluation { point: Vec<f64>, reason: String },

    #[error("boundary data could not be evaluated: {0}")]
    BoundaryEvaluation(String),

    #[error("matrix is not positive definite")]
    NotPositiveDefinite,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("mesh format error at line {line}: {msg}")]
    MeshFormat { line: usize, msg: String },

    #[error("config error at line {line}: {msg}")]
    Config { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

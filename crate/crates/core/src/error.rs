use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("malformed distance matrix: {0}")]
    MalformedMatrix(String),

    #[error("points {0} and {1} coincide")]
    DuplicatePoints(usize, usize),

    #[error("input is not a nondegenerate simplex")]
    Degenerate,

    #[error("linear system is singular")]
    SingularSystem,

    #[error("numeric realization exceeded tolerance: relative error {error:e} > {tol:e}")]
    ToleranceExceeded { error: f64, tol: f64 },

    #[error("pair ({0}, {1}) does not attain the diameter")]
    NotADiameterPair(usize, usize),

    #[error("{n} vertices exceeds the configured cap of {cap}")]
    TooManyVertices { n: usize, cap: usize },

    #[error("invalid family parameters: {0}")]
    InvalidParams(String),

    #[error("closed-form barycentric coordinates disagree with the solver at index {0}")]
    ClosedFormMismatch(usize),

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

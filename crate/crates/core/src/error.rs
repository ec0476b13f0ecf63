use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("evaluation at zero of a polynomial with negative exponents")]
    ZeroAtNegativeExponent,
    #[error("variable rescaling by zero")]
    ZeroScale,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("inexact division: relative remainder {residual:e} exceeds {tol:e}")]
    InexactDivision { residual: f64, tol: f64 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("non-finite value produced by {0}")]
    NonFinite(&'static str),
    #[error("need at least {needed} extrapolation samples, got {got}")]
    InsufficientSamples { needed: usize, got: usize },
    #[error("extrapolation steps must be positive and strictly decreasing")]
    BadSampleSpacing,
    #[error("extrapolation diverged: successive estimates grow ({0:e})")]
    DivergenceDetected(f64),
    #[error("invalid fraction {p}/{q}: {reason}")]
    InvalidFraction { p: i64, q: i64, reason: &'static str },
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: i64, max: i64 },
    #[error("parameter s must be nonzero")]
    ZeroParameter,
    #[error("|Delta(-1)| = {found} does not match p = {expected}")]
    DeterminantMismatch { expected: i64, found: f64 },
    #[error("singular point: |dphi/du| = {0:e} below threshold")]
    SingularPoint(f64),
    #[error("Newton iteration did not converge (last residual {0:e})")]
    NewtonDivergence(f64),
    #[error("Riley roots collide near the seed; continuation step fell below {0:e}")]
    RootCollision(f64),
    #[error("F estimates disagree: ratio {ratio} vs direct {direct} (relative {relative:e})")]
    EstimateDisagreement { ratio: f64, direct: f64, relative: f64 },
    #[error("{knot} has a failed record at k = {k}: {message}")]
    IncompleteInvariants { knot: String, k: i64, message: String },
    #[error("row {row}: {message}")]
    Parse { row: usize, message: String },
    #[error("I/O: {0}")]
    Io(String),
    #[error("JSON: {0}")]
    Json(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

use alloc::string::String;

/// Errors raised by grid construction, body validation and the numerical
/// routines built on top of them.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GeomError {
    #[error("dimension {0} is not supported (need n >= 3)")]
    Dimension(usize),
    #[error("operation requires dimension {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("grid resolution {0} is below the minimum of 8")]
    Resolution(usize),
    #[error("expected {expected} samples, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("non-finite value at index {0}")]
    NonFinite(usize),
    #[error("invalid body: {0}")]
    InvalidBody(String),
    #[error("origin is not an interior point of the body")]
    OriginNotInterior,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("both combination coefficients are zero")]
    ZeroCoefficients,
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("{what} did not converge after {iterations} iterations")]
    NoConvergence { what: &'static str, iterations: usize },
    #[error("transform is not a multiplier: relative residual {residual:e} exceeds {limit:e}")]
    NotMultiplier { residual: f64, limit: f64 },
    #[error("empty measure")]
    EmptyMeasure,
}

pub type Result<T> = core::result::Result<T, GeomError>;

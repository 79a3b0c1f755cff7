//! Errors raised by the boundary-value evaluation core.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HyperError {
    #[error("component is not finite: re={re}, im={im}")]
    NonFiniteComponent { re: f64, im: f64 },

    #[error("interval term requires a < b, got a={a}, b={b}")]
    InvalidInterval { a: f64, b: f64 },

    #[error("rational term denominator is identically zero")]
    ZeroDenominator,

    #[error("evaluation point {x} is within the jump guard {guard} of singular point {singularity}")]
    TooCloseToSingularity { x: f64, singularity: f64, guard: f64 },

    #[error("extrapolation did not converge below tolerance {tolerance} (last residual {residual})")]
    NoConvergence { tolerance: f64, residual: f64 },

    #[error("differintegration order must be a real integer in v1, got {re}+{im}i")]
    UnsupportedOrder { re: f64, im: f64 },

    #[error("antiderivative of a non-polynomial rational term is outside the v1 term catalog")]
    UnsupportedAntiderivative,

    #[error("path-sum invariance requires at least one singular point")]
    NoSingularPoints,

    #[error("winding count {winding} exceeds the supported range |Z| <= 8")]
    WindingOutOfRange { winding: i32 },

    #[error("sigma sequence must be strictly decreasing positive reals")]
    BadSigmaSequence,

    #[error("tolerance must be positive, got {0}")]
    BadTolerance(f64),
}

impl HyperError {
    /// Stable machine-readable code, used verbatim on the CLI error stream.
    pub fn code(&self) -> &'static str {
        match self {
            HyperError::NonFiniteComponent { .. } => "NON_FINITE_COMPONENT",
            HyperError::InvalidInterval { .. } => "INVALID_INTERVAL",
            HyperError::ZeroDenominator => "ZERO_DENOMINATOR",
            HyperError::TooCloseToSingularity { .. } => "TOO_CLOSE_TO_SINGULARITY",
            HyperError::NoConvergence { .. } => "NO_CONVERGENCE",
            HyperError::UnsupportedOrder { .. } => "UNSUPPORTED_ORDER",
            HyperError::UnsupportedAntiderivative => "UNSUPPORTED_ANTIDERIVATIVE",
            HyperError::NoSingularPoints => "NO_SINGULAR_POINTS",
            HyperError::WindingOutOfRange { .. } => "WINDING_OUT_OF_RANGE",
            HyperError::BadSigmaSequence => "BAD_SIGMA_SEQUENCE",
            HyperError::BadTolerance(_) => "BAD_TOLERANCE",
        }
    }
}

use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("singular point: {0}")]
    Singular(String),
    #[error("quadrature did not converge: estimate {estimate:e}, error {error:e}")]
    QuadratureNonConvergence { estimate: f64, error: f64 },
    #[error("unsupported combination: {0}")]
    Unsupported(String),
    #[error("series convergence gate violated: radius {radius} <= support half-width {support}")]
    ConvergenceGate { radius: f64, support: f64 },
    #[error("spectral derivative unstable: {0}")]
    DerivativeInstability(String),
    #[error("finite-difference derivative unresolved: {0}")]
    DerivativeUnresolved(String),
    #[error("response below numerical floor: {0}")]
    BelowFloor(String),
    #[error("infrared divergence: {0}")]
    InfraredDivergence(String),
    #[error("overflow: {0}")]
    Overflow(String),
}

pub type Result<T> = std::result::Result<T, Error>;

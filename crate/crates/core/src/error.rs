use thiserror::Error;

/// Crate-wide error type. Numeric routines signal failure conditions
/// explicitly rather than returning NaN.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("pole encountered: {0}")]
    Pole(String),
    #[error("branch cut evaluation: {0}")]
    Cut(String),
    #[error("overflow: {0}")]
    Overflow(String),
    #[error("singular matrix: {0}")]
    SingularMatrix(String),
    #[error("negative determinant (operator not a valid gap probability): {0}")]
    NegativeDeterminant(String),
    #[error("ODE step failure at tau = {tau}: {message}")]
    OdeStep { tau: f64, message: String },
    #[error("interpolation outside sample grid: {0}")]
    Extrapolation(String),
    #[error("kernel value has non-real residual {residual:.3e} (tolerance {tolerance:.1e})")]
    NonReal { residual: f64, tolerance: f64 },
    #[error("integrand appears divergent: {0}")]
    Divergent(String),
    #[error("finite-difference grid too coarse: {0}")]
    GridTooCoarse(String),
    #[error("sector mismatch: {0}")]
    SectorMismatch(String),
    #[error("csv parse error: {0}")]
    Csv(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;

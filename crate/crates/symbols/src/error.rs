use stokes_geometry::GeometryError;
use thiserror::Error;

/// Errors raised while evaluating symbols or assembling coefficients.
#[derive(Debug, Error)]
pub enum SymbolError {
    /// A symbol of negative or fractional homogeneity was requested at ξ′ = 0.
    #[error("symbol `{0}` is singular at ξ′ = 0")]
    SingularSymbol(&'static str),
    /// The spectral parameter sits on the resolvent pole `τ = c(ξ′)`.
    #[error("resolvent pole: τ = {tau} coincides with the principal value {pole}")]
    ResolventPole { tau: num_complex::Complex64, pole: f64 },
    /// A resolvent symbol was requested without a spectral parameter.
    #[error("spectral parameter τ is required for resolvent symbols")]
    MissingSpectralParameter,
    /// Matrix or vector shapes do not match.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    /// The graded pipeline is only implemented to the orders needed for a₀ and a₁.
    #[error("order {requested} is not supported (maximum {max})")]
    UnsupportedOrder { requested: usize, max: usize },
    /// An invalid scalar argument.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    /// Propagated geometry error.
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

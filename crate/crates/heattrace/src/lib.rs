//! Heat traces `Σ_k e^{−tλ_k}` of Steklov spectra, least-squares fits of
//! the small-`t` expansion `â₀ t^{1−n} + â₁ t^{2−n} (+ c t log t)`, and the
//! inversion of the fitted coefficients to boundary length and total
//! weighted curvature.

// Positive-parameter checks are written as `!(x > 0.0)` so that NaN fails.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod fit;
mod invert;
mod trace;

pub use fit::{fit_two_term, FitOptions, HeatTraceFit, MAX_CONDITION, MIN_SPAN};
pub use invert::{curvature_factor, invert_geometry, FitReport, GeometryEstimate};
pub use trace::{log_grid, partial_trace, HeatTraceSample, TraceOptions, DEFAULT_TAIL_FRACTION};

use thiserror::Error;

/// Failures of trace evaluation, fitting and inversion.
#[derive(Debug, Error)]
pub enum HeatTraceError {
    /// A parameter is outside its admissible range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    /// Too few usable samples, or too narrow a `t` range.
    #[error("insufficient samples: {0}")]
    InsufficientSamples(String),
    /// The least-squares system is too ill-conditioned.
    #[error("ill-conditioned fit (condition {condition:e} > {limit:e}); widen the t-range")]
    IllConditioned { condition: f64, limit: f64 },
    /// The fitted coefficients cannot be inverted.
    #[error("inversion error: {0}")]
    Inversion(String),
    /// Failure in the symbol-side densities.
    #[error(transparent)]
    Symbols(#[from] stokes_symbols::SymbolError),
    /// Failure building a boundary jet.
    #[error(transparent)]
    Geometry(#[from] stokes_geometry::GeometryError),
}

//! Inversion of fitted heat coefficients to boundary geometry.

use serde::{Deserialize, Serialize};
use stokes_geometry::BoundaryJet;
use stokes_symbols::{a0_density, a1_density, MuConvention};

use crate::fit::HeatTraceFit;
use crate::HeatTraceError;

/// Geometric quantities recovered from a fit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeometryEstimate {
    /// Boundary volume (length for `n = 2`) from `â₀`.
    pub perimeter: f64,
    /// `∫ μ^w Σκ` from `â₁`, with `w = 1` (paper) or `2 − n` (carried).
    pub weighted_curvature: f64,
    /// `∫ Σκ` for the constant viscosity supplied (the weighted value with
    /// the weight divided out).
    pub total_curvature: f64,
    /// Convention used for both inversions.
    pub convention: MuConvention,
}

/// Heat-coefficient density per unit `Σκ`: `a₁ density = factor · μ^w Σκ`
/// (the factor with `w(μ)` included, for constant viscosity `mu`).
///
/// # Errors
/// Propagates jet construction errors (`n ∉ {2, 3}`, `mu ≤ 0`).
pub fn curvature_factor(n: usize, mu: f64, convention: MuConvention) -> Result<f64, HeatTraceError> {
    if n < 2 {
        return Err(HeatTraceError::InvalidParameter(format!("dimension must be at least 2, got {n}")));
    }
    let mut kappa = vec![0.0; n - 1];
    kappa[0] = 1.0;
    let jet = BoundaryJet::adapted(&kappa, mu, 0.0, &[])?;
    Ok(a1_density(&jet, convention))
}

/// Weight exponent `w` of `μ^w Σκ` in the `a₁` density.
fn weight_exponent(n: usize, convention: MuConvention) -> i32 {
    match convention {
        MuConvention::Paper => 1,
        MuConvention::Carried => 2 - n as i32,
    }
}

/// Converts `(â₀, â₁)` to boundary volume and weighted total curvature for
/// constant viscosity `mu`:
/// `vol(∂Ω) = â₀ / a₀-density`, `∫ μ^w Σκ = â₁ / (a₁-density per unit μ^w Σκ)`.
///
/// # Errors
/// [`HeatTraceError::Inversion`] if `â₀ ≤ 0`; parameter errors from the
/// densities.
pub fn invert_geometry(
    fit: &HeatTraceFit,
    mu: f64,
    convention: MuConvention,
) -> Result<GeometryEstimate, HeatTraceError> {
    if !(fit.a0_hat > 0.0) {
        return Err(HeatTraceError::Inversion(format!("leading coefficient {} is not positive", fit.a0_hat)));
    }
    let n = fit.n;
    let perimeter = fit.a0_hat / a0_density(n, mu, convention)?;
    let per_unit = curvature_factor(n, mu, convention)?;
    let weight = mu.powi(weight_exponent(n, convention));
    let weighted_curvature = fit.a1_hat / per_unit * weight;
    Ok(GeometryEstimate { perimeter, weighted_curvature, total_curvature: weighted_curvature / weight, convention })
}

/// Fit report written by the command-line tool.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitReport {
    pub a0_hat: f64,
    pub a1_hat: f64,
    pub residual: f64,
    pub perimeter_est: f64,
    pub curvature_est: f64,
    pub convention: MuConvention,
    pub diagnostics: serde_json::Value,
}

impl FitReport {
    /// Assembles the report from a fit and its inversion.
    #[must_use]
    pub fn new(fit: &HeatTraceFit, geometry: &GeometryEstimate) -> Self {
        Self {
            a0_hat: fit.a0_hat,
            a1_hat: fit.a1_hat,
            residual: fit.residual,
            perimeter_est: geometry.perimeter,
            curvature_est: geometry.weighted_curvature,
            convention: geometry.convention,
            diagnostics: serde_json::json!({
                "n": fit.n,
                "tlogt": fit.tlogt,
                "std_errors": fit.std_errors,
                "relative_residual": fit.relative_residual,
                "condition": fit.condition,
                "t_grid": fit.t_grid,
                "residuals": fit.residuals,
                "dropped_samples": fit.dropped_samples,
                "total_curvature": geometry.total_curvature,
            }),
        }
    }
}

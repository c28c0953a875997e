//! Integrals of `e^{−c|ξ′|}` over the cotangent fibre `ℝ^{n−1}`.

use statrs::function::gamma::gamma;

use crate::error::SymbolError;

/// Volume of the unit sphere `𝕊^{d}` in `ℝ^{d+1}`: `2π^{(d+1)/2}/Γ((d+1)/2)`.
/// `vol(𝕊⁰) = 2` counts the two points `±1`.
#[must_use]
pub fn sphere_volume(d: usize) -> f64 {
    let h = (d as f64 + 1.0) / 2.0;
    2.0 * std::f64::consts::PI.powf(h) / gamma(h)
}

/// `∫_{ℝ^{n−1}} e^{−c|ξ′|} dξ′ = Γ(n−1) vol(𝕊^{n−2}) / c^{n−1}`.
///
/// With `weighted = true` the integrand carries the extra factor
/// `ξ_α²/|ξ′|²` for one fixed α; by symmetry this divides the result by
/// `n − 1`.
///
/// # Errors
/// [`SymbolError::InvalidParameter`] if `n < 2` or `c ≤ 0`.
pub fn radial_integral(n: usize, c: f64, weighted: bool) -> Result<f64, SymbolError> {
    if n < 2 {
        return Err(SymbolError::InvalidParameter(format!("dimension must be at least 2, got {n}")));
    }
    if !(c > 0.0 && c.is_finite()) {
        return Err(SymbolError::InvalidParameter(format!("decay rate must be positive, got {c}")));
    }
    let m = n - 1;
    let base = gamma(m as f64) * sphere_volume(m - 1) / c.powi(m as i32);
    Ok(if weighted { base / m as f64 } else { base })
}

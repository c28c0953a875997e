//! Contour integration of the resolvent poles against the heat factor.

use num_complex::Complex64;
use stokes_geometry::quadrature::gauss_legendre;

use crate::error::SymbolError;

fn check(k: usize, t: f64, c: f64) -> Result<(), SymbolError> {
    if k < 1 {
        return Err(SymbolError::InvalidParameter(format!("pole order must be at least 1, got {k}")));
    }
    if !(t > 0.0 && t.is_finite()) {
        return Err(SymbolError::InvalidParameter(format!("time must be positive, got {t}")));
    }
    if !(c > 0.0 && c.is_finite()) {
        return Err(SymbolError::InvalidParameter(format!("pole location must be positive, got {c}")));
    }
    Ok(())
}

/// `(i/2π) ∮ e^{−tτ} (c − τ)^{−k} dτ` over a counter-clockwise contour
/// enclosing the pole `τ = c`, evaluated by the residue theorem:
///
/// `t^{k−1} e^{−tc} / (k−1)!`.
///
/// The sign follows from `(c − τ)^{−k} = (−1)^k (τ − c)^{−k}`: the residue of
/// the integrand is `(−1)^k (−t)^{k−1} e^{−tc}/(k−1)!`, and the prefactor
/// `i · 2πi / 2π = −1` turns this into a non-negative number for every `k`.
///
/// # Errors
/// [`SymbolError::InvalidParameter`] if `k < 1`, `t ≤ 0` or `c ≤ 0`.
pub fn residue_heat_factor(k: usize, t: f64, c: f64) -> Result<f64, SymbolError> {
    check(k, t, c)?;
    let factorial: f64 = (1..k).map(|j| j as f64).product();
    Ok(t.powi(k as i32 - 1) * (-t * c).exp() / factorial)
}

/// Shape of the rectangle used by [`contour_heat_factor`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourOptions {
    /// Half-width of the rectangle along the real axis.
    pub half_width: f64,
    /// Half-height of the rectangle along the imaginary axis.
    pub half_height: f64,
    /// Gauss–Legendre nodes per side.
    pub nodes_per_side: usize,
}

impl Default for ContourOptions {
    fn default() -> Self {
        Self { half_width: 1.0, half_height: 1.0, nodes_per_side: 96 }
    }
}

/// The same contour integral as [`residue_heat_factor`], evaluated by
/// Gauss–Legendre quadrature along the four sides of a counter-clockwise
/// rectangle centred on the pole. Used only as a cross-check.
///
/// # Errors
/// As [`residue_heat_factor`], plus [`SymbolError::InvalidParameter`] for a
/// degenerate rectangle.
pub fn contour_heat_factor(k: usize, t: f64, c: f64, opts: ContourOptions) -> Result<f64, SymbolError> {
    check(k, t, c)?;
    if !(opts.half_width > 0.0 && opts.half_height > 0.0 && opts.nodes_per_side >= 2) {
        return Err(SymbolError::InvalidParameter("degenerate contour rectangle".into()));
    }
    let (w, h) = (opts.half_width, opts.half_height);
    let corners =
        [Complex64::new(c - w, -h), Complex64::new(c + w, -h), Complex64::new(c + w, h), Complex64::new(c - w, h)];
    let rule = gauss_legendre(opts.nodes_per_side).mapped(0.0, 1.0);
    let f = |tau: Complex64| (-t * tau).exp() / (Complex64::new(c, 0.0) - tau).powi(k as i32);
    let mut total = Complex64::new(0.0, 0.0);
    for side in 0..4 {
        let (a, b) = (corners[side], corners[(side + 1) % 4]);
        let d = b - a;
        for (s, wt) in rule.nodes.iter().zip(&rule.weights) {
            total += f(a + d * *s) * d * *wt;
        }
    }
    let value = Complex64::new(0.0, 1.0) * total / std::f64::consts::TAU;
    Ok(value.re)
}

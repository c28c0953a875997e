//! Pointwise heat-trace densities and their boundary integrals.
//!
//! The coefficient of `t^{−(n−1)+l}` in the small-time expansion of the heat
//! trace has the pointwise density
//!
//! ```text
//!   a_l(x) = (2π)^{−(n−1)} ∫_{ℝ^{n−1}} (i/2π) ∮ e^{−tτ} Tr ϖ_{−1−l}(x, ξ′, τ) dτ dξ′ |_{t=1},
//! ```
//!
//! which by homogeneity does not depend on the choice `t = 1`. The closed
//! forms below evaluate the τ- and ξ′-integrals exactly; the numeric
//! pipeline evaluates them from the symbol chain by residues and a radial
//! Gauss–Laguerre rule, and exists as an independent cross-check.

use serde::{Deserialize, Serialize};
use statrs::function::gamma::gamma;
use stokes_geometry::quadrature::{gauss_laguerre, periodic_trapezoid};
use stokes_geometry::{curve_jet, BoundaryJet, PlanarDomain, ViscositySpec};

use crate::context::{IndexConvention, MuConvention, SymbolContext};
use crate::dtn::{pole_coefficients, VarpiLevel};
use crate::error::SymbolError;
use crate::radial::{radial_integral, sphere_volume};
use crate::residue::residue_heat_factor;

/// Which heat coefficient to compute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Coefficient {
    /// Leading coefficient (boundary volume term).
    A0,
    /// First correction (curvature term).
    A1,
}

impl Coefficient {
    fn level(self) -> VarpiLevel {
        match self {
            Self::A0 => VarpiLevel::One,
            Self::A1 => VarpiLevel::Two,
        }
    }
}

fn principal_scale(mu: f64, convention: MuConvention) -> f64 {
    match convention {
        MuConvention::Paper => 2.0,
        MuConvention::Carried => 2.0 * mu,
    }
}

/// `n Γ(n−1) vol(𝕊^{n−2}) / (2π b)^{n−1}` with `b = 2μ` (carried) or `b = 2`
/// (paper); for μ ≡ 1 both equal `n Γ(n−1) vol(𝕊^{n−2}) / (4π)^{n−1}`.
///
/// # Errors
/// [`SymbolError::InvalidParameter`] if `n < 2` or `mu ≤ 0`.
pub fn a0_density(n: usize, mu: f64, convention: MuConvention) -> Result<f64, SymbolError> {
    if !(mu > 0.0 && mu.is_finite()) {
        return Err(SymbolError::InvalidParameter(format!("viscosity must be positive, got {mu}")));
    }
    let b = principal_scale(mu, convention);
    Ok(n as f64 * radial_integral(n, b, false)? / std::f64::consts::TAU.powi(n as i32 - 1))
}

/// Curvature density
/// `(2n+1) Γ(n−1) vol(𝕊^{n−2}) / (2(n−1)(4π)^{n−1}) · w(μ) · Σκ_α`
/// with `w(μ) = μ` (paper) or `μ^{2−n}` (carried).
///
/// This is [`a1_density_with_index`] under the
/// [`IndexConvention::MetricInverse`] convention, the one for which the unit
/// disk reproduces the coefficient of the exact spectrum.
#[must_use]
pub fn a1_density(jet: &BoundaryJet, convention: MuConvention) -> f64 {
    a1_density_with_index(jet, convention, IndexConvention::MetricInverse)
}

/// Curvature density for either index convention:
///
/// `Γ(n−1)vol(𝕊^{n−2}) / (2π b)^{n−1} · μ · [Σκ + (Σκ − ΣU_{αα}) / (2(n−1))]`,
///
/// `U = ∂g^{αβ}/∂xₙ`, i.e. factor `(2n+1)/(2(n−1))·Σκ` for `U = −2κ` and
/// `(2n−3)/(2(n−1))·Σκ` for `U = +2κ`. Tangential viscosity gradients enter
/// `Tr ϖ₋₂` only through a term odd in ξ′ and do not contribute.
#[must_use]
pub fn a1_density_with_index(jet: &BoundaryJet, mu_convention: MuConvention, index: IndexConvention) -> f64 {
    let n = jet.dim();
    let mu = jet.mu();
    let b = principal_scale(mu, mu_convention);
    let m = (n - 1) as f64;
    let sum_k: f64 = jet.kappa().iter().sum();
    let sum_u: f64 = (0..n - 1).map(|a| index.sign() * jet.dg_lower_dn(a, a)).sum();
    let radial = gamma(m) * sphere_volume(n - 2) / b.powi(n as i32 - 1);
    radial / std::f64::consts::TAU.powi(n as i32 - 1) * mu * (sum_k + (sum_k - sum_u) / (2.0 * m))
}

/// Quadrature resolution of the numeric density pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PipelineOptions {
    /// Gauss–Laguerre nodes in `|ξ′|`.
    pub radial_nodes: usize,
    /// Trapezoid nodes on the unit circle of directions (used for `n = 3`;
    /// `n = 2` uses the two directions `±1`).
    pub angular_nodes: usize,
    /// Sign convention for `∂g^{αβ}/∂xₙ`.
    pub index_convention: IndexConvention,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        Self { radial_nodes: 32, angular_nodes: 16, index_convention: IndexConvention::MetricInverse }
    }
}

/// Unit directions in `ℝ^{n−1}` with their surface weights.
fn directions(n: usize, angular_nodes: usize) -> Result<Vec<(Vec<f64>, f64)>, SymbolError> {
    match n {
        2 => Ok(vec![(vec![1.0], 1.0), (vec![-1.0], 1.0)]),
        3 => {
            let rule = periodic_trapezoid(angular_nodes.max(1));
            Ok(rule.nodes.iter().zip(&rule.weights).map(|(th, w)| (vec![th.cos(), th.sin()], *w)).collect())
        }
        _ => Err(SymbolError::InvalidParameter(format!("numeric densities support n ∈ {{2, 3}}, got {n}"))),
    }
}

/// Density computed from the symbol chain: pole coefficients of
/// `Tr ϖ_{−1−l}` at each ξ′ node, the residue heat factor at `t = 1`, and a
/// polar ξ′-quadrature.
///
/// # Errors
/// Propagates symbol-evaluation errors.
pub fn numeric_density(
    jet: &BoundaryJet,
    which: Coefficient,
    mu_convention: MuConvention,
    opts: &PipelineOptions,
) -> Result<f64, SymbolError> {
    let n = jet.dim();
    let level = which.level();
    let b = principal_scale(jet.mu(), mu_convention);
    let laguerre = gauss_laguerre(opts.radial_nodes);
    let base = SymbolContext::new(jet.clone(), 0.0, &vec![1.0; n - 1])?
        .with_mu_convention(mu_convention)
        .with_index_convention(opts.index_convention);
    let mut total = 0.0;
    for (omega, dir_weight) in directions(n, opts.angular_nodes)? {
        let mut radial = 0.0;
        for (u, w) in laguerre.nodes.iter().zip(&laguerre.weights) {
            let r = u / b;
            let xi: Vec<f64> = omega.iter().map(|v| v * r).collect();
            let ctx = base.clone().with_xi(&xi);
            let c = ctx.principal_value();
            let coeffs = pole_coefficients(level, &ctx)?;
            let mut g = 0.0;
            for (k, nk) in coeffs.iter().enumerate() {
                g += nk.re * residue_heat_factor(k + 1, 1.0, c)?;
            }
            // ∫₀^∞ r^{n−2} g(r) dr with r = u/b and the Laguerre weight e^{−u}.
            radial += w * u.exp() * r.powi(n as i32 - 2) * g;
        }
        total += dir_weight * radial / b;
    }
    Ok(total / std::f64::consts::TAU.powi(n as i32 - 1))
}

fn check_quadrature(n_quad: usize) -> Result<(), SymbolError> {
    if n_quad < 4 {
        return Err(SymbolError::InvalidParameter(format!("at least 4 boundary nodes are required, got {n_quad}")));
    }
    Ok(())
}

/// Boundary integral `∮ a_l(s) |γ′(s)| ds` of the closed-form density
/// (periodic trapezoid rule on `n_quad` nodes).
///
/// # Errors
/// Geometry errors from the boundary jets, and
/// [`SymbolError::InvalidParameter`] for fewer than 4 nodes.
pub fn assemble_coefficient(
    domain: &PlanarDomain,
    visc: &ViscositySpec,
    which: Coefficient,
    convention: MuConvention,
    n_quad: usize,
) -> Result<f64, SymbolError> {
    check_quadrature(n_quad)?;
    let rule = periodic_trapezoid(n_quad);
    let mut sum = 0.0;
    for (s, w) in rule.nodes.iter().zip(&rule.weights) {
        let jet = curve_jet(domain, visc, *s)?;
        let density = match which {
            Coefficient::A0 => a0_density(2, jet.mu(), convention)?,
            Coefficient::A1 => a1_density(&jet, convention),
        };
        sum += w * density * domain.speed(*s);
    }
    Ok(sum)
}

/// As [`assemble_coefficient`], with each density computed by
/// [`numeric_density`].
///
/// # Errors
/// As [`assemble_coefficient`] and [`numeric_density`].
pub fn assemble_coefficient_numeric(
    domain: &PlanarDomain,
    visc: &ViscositySpec,
    which: Coefficient,
    convention: MuConvention,
    opts: &PipelineOptions,
    n_quad: usize,
) -> Result<f64, SymbolError> {
    check_quadrature(n_quad)?;
    let rule = periodic_trapezoid(n_quad);
    let mut sum = 0.0;
    for (s, w) in rule.nodes.iter().zip(&rule.weights) {
        let jet = curve_jet(domain, visc, *s)?;
        sum += w * numeric_density(&jet, which, convention, opts)? * domain.speed(*s);
    }
    Ok(sum)
}

//! Velocity fields evaluable at interior points, and the Rayleigh quotient
//! `2μ∫|Def u|² / ∮|u|²` that characterises the Steklov eigenvalues.

use std::f64::consts::PI;

use stokes_geometry::PlanarDomain;

use crate::error::EigenError;
use crate::quadrature::{BoundaryQuadrature, InteriorQuadrature};

/// A velocity field on the plane.
pub trait VelocityField {
    /// Velocity `u(x)`.
    fn velocity(&self, x: [f64; 2]) -> [f64; 2];
    /// Gradient `∂_j u_i(x)` as `[i][j]`.
    fn gradient(&self, x: [f64; 2]) -> [[f64; 2]; 2];
}

/// Rigid motion `u = t + ω (−(y − c_y), x − c_x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RigidMotion {
    pub translation: [f64; 2],
    pub angular_velocity: f64,
    pub center: [f64; 2],
}

impl VelocityField for RigidMotion {
    fn velocity(&self, x: [f64; 2]) -> [f64; 2] {
        let (dx, dy) = (x[0] - self.center[0], x[1] - self.center[1]);
        [self.translation[0] - self.angular_velocity * dy, self.translation[1] + self.angular_velocity * dx]
    }

    fn gradient(&self, _x: [f64; 2]) -> [[f64; 2]; 2] {
        [[0.0, -self.angular_velocity], [self.angular_velocity, 0.0]]
    }
}

/// Superposition of two-dimensional Stokeslets
/// `u(x) = Σ_j G(x − y_j) f_j`, `G(r) = (−log|r| I + r rᵀ/|r|²)/(4πμ)`,
/// with pressure `p = Σ_j (r·f_j)/(2π|r|²)`.
#[derive(Debug, Clone, PartialEq)]
pub struct StokesletField {
    pub sources: Vec<[f64; 2]>,
    pub strengths: Vec<[f64; 2]>,
    pub mu: f64,
}

/// Velocity of a unit-viscosity Stokeslet at offset `r` for force `f`,
/// times `4π`.
#[inline]
pub(crate) fn stokeslet_velocity(r: [f64; 2], f: [f64; 2]) -> [f64; 2] {
    let r2 = r[0] * r[0] + r[1] * r[1];
    let log = -0.5 * r2.ln();
    let rf = (r[0] * f[0] + r[1] * f[1]) / r2;
    [log * f[0] + rf * r[0], log * f[1] + rf * r[1]]
}

/// Traction `σν = 2μ Def u ν − pν` of a Stokeslet with force `f` at offset
/// `r`, for normal `ν`. Independent of μ:
/// `σ_ik = −r_i r_k (r·f)/(π|r|⁴)`.
#[inline]
pub(crate) fn stokeslet_traction(r: [f64; 2], f: [f64; 2], nu: [f64; 2]) -> [f64; 2] {
    let r2 = r[0] * r[0] + r[1] * r[1];
    let c = -(r[0] * f[0] + r[1] * f[1]) * (r[0] * nu[0] + r[1] * nu[1]) / (PI * r2 * r2);
    [c * r[0], c * r[1]]
}

impl StokesletField {
    /// Pressure at `x`.
    #[must_use]
    pub fn pressure(&self, x: [f64; 2]) -> f64 {
        let mut p = 0.0;
        for (y, f) in self.sources.iter().zip(&self.strengths) {
            let r = [x[0] - y[0], x[1] - y[1]];
            p += (r[0] * f[0] + r[1] * f[1]) / (r[0] * r[0] + r[1] * r[1]);
        }
        p / (2.0 * PI)
    }

    /// Traction `σ_μ(u, p)ν` at `x` for normal `nu`.
    #[must_use]
    pub fn traction(&self, x: [f64; 2], nu: [f64; 2]) -> [f64; 2] {
        let mut t = [0.0; 2];
        for (y, f) in self.sources.iter().zip(&self.strengths) {
            let v = stokeslet_traction([x[0] - y[0], x[1] - y[1]], *f, nu);
            t[0] += v[0];
            t[1] += v[1];
        }
        t
    }
}

impl VelocityField for StokesletField {
    fn velocity(&self, x: [f64; 2]) -> [f64; 2] {
        let mut u = [0.0; 2];
        for (y, f) in self.sources.iter().zip(&self.strengths) {
            let v = stokeslet_velocity([x[0] - y[0], x[1] - y[1]], *f);
            u[0] += v[0];
            u[1] += v[1];
        }
        let s = 1.0 / (4.0 * PI * self.mu);
        [s * u[0], s * u[1]]
    }

    fn gradient(&self, x: [f64; 2]) -> [[f64; 2]; 2] {
        // ∂_k G_ij f_j = (−δ_ij r_k + δ_ik r_j + δ_jk r_i)/r² f_j − 2 r_i r_j r_k f_j / r⁴.
        let mut g = [[0.0; 2]; 2];
        for (y, f) in self.sources.iter().zip(&self.strengths) {
            let r = [x[0] - y[0], x[1] - y[1]];
            let r2 = r[0] * r[0] + r[1] * r[1];
            let rf = r[0] * f[0] + r[1] * f[1];
            for i in 0..2 {
                for k in 0..2 {
                    let delta_ik = if i == k { 1.0 } else { 0.0 };
                    g[i][k] += (-f[i] * r[k] + delta_ik * rf + f[k] * r[i]) / r2 - 2.0 * r[i] * rf * r[k] / (r2 * r2);
                }
            }
        }
        let s = 1.0 / (4.0 * PI * self.mu);
        [[s * g[0][0], s * g[0][1]], [s * g[1][0], s * g[1][1]]]
    }
}

/// Squared Frobenius norm of the deformation tensor `½(∇u + ∇uᵀ)`.
#[must_use]
pub fn deformation_norm2(g: [[f64; 2]; 2]) -> f64 {
    let off = 0.5 * (g[0][1] + g[1][0]);
    g[0][0] * g[0][0] + g[1][1] * g[1][1] + 2.0 * off * off
}

/// Viscous dissipation `2μ∫_Ω |Def u|²`.
pub fn dissipation(field: &dyn VelocityField, mu: f64, interior: &InteriorQuadrature) -> f64 {
    2.0 * mu * interior.integrate(|x| deformation_norm2(field.gradient(x)))
}

/// Boundary energy `∮ |u|² ds`.
pub fn boundary_energy(field: &dyn VelocityField, boundary: &BoundaryQuadrature) -> f64 {
    boundary
        .points
        .iter()
        .zip(&boundary.weights)
        .map(|(&x, &w)| {
            let u = field.velocity(x);
            w * (u[0] * u[0] + u[1] * u[1])
        })
        .sum()
}

/// Quadrature resolution for [`rayleigh_check`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RayleighOptions {
    /// Gauss–Legendre nodes in the radial direction.
    pub radial_nodes: usize,
    /// Trapezoid nodes in the angular direction (also used on the boundary).
    pub angular_nodes: usize,
    /// Eigenvalues below this are compared with an absolute quotient.
    pub zero_scale: f64,
}

impl Default for RayleighOptions {
    fn default() -> Self {
        Self { radial_nodes: 48, angular_nodes: 512, zero_scale: 1e-8 }
    }
}

/// Rayleigh quotient `2μ∫|Def u|² / ∮|u|²`.
///
/// # Errors
/// [`EigenError::UnsupportedDomain`] for non-star-shaped domains;
/// [`EigenError::InvalidParameter`] if the boundary energy vanishes.
pub fn rayleigh_quotient(
    field: &dyn VelocityField,
    mu: f64,
    domain: &PlanarDomain,
    options: &RayleighOptions,
) -> Result<f64, EigenError> {
    let interior = InteriorQuadrature::star(domain, options.radial_nodes, options.angular_nodes)?;
    let boundary = BoundaryQuadrature::trapezoid(domain, options.angular_nodes);
    let energy = boundary_energy(field, &boundary);
    if !(energy > 0.0) {
        return Err(EigenError::InvalidParameter("field has zero boundary trace".into()));
    }
    Ok(dissipation(field, mu, &interior) / energy)
}

/// Relative Rayleigh defect `|quotient − λ| / max(λ, ε)` of a candidate
/// eigenpair; for `λ < ε` (a zero mode) this is `|quotient|/ε`.
///
/// # Errors
/// As [`rayleigh_quotient`].
pub fn rayleigh_check(
    field: &dyn VelocityField,
    lambda: f64,
    mu: f64,
    domain: &PlanarDomain,
    options: &RayleighOptions,
) -> Result<f64, EigenError> {
    let q = rayleigh_quotient(field, mu, domain, options)?;
    Ok((q - lambda).abs() / lambda.max(options.zero_scale))
}

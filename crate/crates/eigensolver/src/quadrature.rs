//! Boundary and interior quadrature on star-shaped planar domains.

use stokes_geometry::quadrature::{gauss_legendre, periodic_trapezoid};
use stokes_geometry::PlanarDomain;

use crate::error::EigenError;

/// Samples used to test star-shapedness.
const STAR_SAMPLES: usize = 2048;

/// Nodes, unit outward normals and arc-length weights on the boundary.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryQuadrature {
    /// Curve parameters of the nodes.
    pub parameters: Vec<f64>,
    /// Boundary points.
    pub points: Vec<[f64; 2]>,
    /// Unit outward normals.
    pub normals: Vec<[f64; 2]>,
    /// Trapezoid weights `|γ′(s)|·2π/m`.
    pub weights: Vec<f64>,
}

impl BoundaryQuadrature {
    /// Periodic trapezoid rule with `m` equispaced parameter nodes.
    #[must_use]
    pub fn trapezoid(domain: &PlanarDomain, m: usize) -> Self {
        let rule = periodic_trapezoid(m);
        let mut q = Self { parameters: rule.nodes.clone(), points: vec![], normals: vec![], weights: vec![] };
        for (&s, &w) in rule.nodes.iter().zip(&rule.weights) {
            q.points.push(domain.point(s));
            q.normals.push(domain.outward_normal(s));
            q.weights.push(w * domain.speed(s));
        }
        q
    }

    /// Number of nodes.
    #[must_use]
    pub fn len(&self) -> usize {
        self.points.len()
    }

    /// Whether there are no nodes.
    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Interior rule `x = c + ρ(γ(s) − c)`, Gauss–Legendre in `ρ ∈ (0, 1)` and
/// trapezoid in `s`, with Jacobian `ρ·(γ − c) × γ′`.
#[derive(Debug, Clone, PartialEq)]
pub struct InteriorQuadrature {
    /// Interior nodes.
    pub points: Vec<[f64; 2]>,
    /// Area weights.
    pub weights: Vec<f64>,
}

impl InteriorQuadrature {
    /// Builds the rule about the domain centroid.
    ///
    /// # Errors
    /// [`EigenError::UnsupportedDomain`] if the domain is not star-shaped
    /// about its centroid; [`EigenError::InvalidParameter`] for empty grids.
    pub fn star(domain: &PlanarDomain, n_radial: usize, n_angular: usize) -> Result<Self, EigenError> {
        Self::star_about(domain, domain.centroid(), n_radial, n_angular)
    }

    /// Builds the rule about `center`.
    ///
    /// # Errors
    /// As [`InteriorQuadrature::star`].
    pub fn star_about(
        domain: &PlanarDomain,
        center: [f64; 2],
        n_radial: usize,
        n_angular: usize,
    ) -> Result<Self, EigenError> {
        if n_radial == 0 || n_angular == 0 {
            return Err(EigenError::InvalidParameter("interior quadrature needs nonempty grids".into()));
        }
        if !domain.is_star_shaped_about(center, STAR_SAMPLES.max(4 * n_angular)) {
            return Err(EigenError::UnsupportedDomain(format!(
                "domain '{}' is not star-shaped about ({}, {})",
                domain.label(),
                center[0],
                center[1]
            )));
        }
        let radial = gauss_legendre(n_radial).mapped(0.0, 1.0);
        let angular = periodic_trapezoid(n_angular);
        let mut q = Self { points: Vec::with_capacity(n_radial * n_angular), weights: vec![] };
        for (&s, &ws) in angular.nodes.iter().zip(&angular.weights) {
            let p = domain.point(s);
            let d = domain.derivative(s, 1);
            let (ex, ey) = (p[0] - center[0], p[1] - center[1]);
            let cross = ex * d[1] - ey * d[0];
            for (&r, &wr) in radial.nodes.iter().zip(&radial.weights) {
                q.points.push([center[0] + r * ex, center[1] + r * ey]);
                q.weights.push(ws * wr * r * cross);
            }
        }
        Ok(q)
    }

    /// Applies the rule.
    pub fn integrate(&self, mut f: impl FnMut([f64; 2]) -> f64) -> f64 {
        self.points.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }
}

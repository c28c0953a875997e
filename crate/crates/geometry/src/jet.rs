//! Boundary data in boundary normal coordinates.

use crate::curve::PlanarDomain;
use crate::error::GeometryError;
use crate::viscosity::ViscositySpec;

/// Metric, curvature and viscosity data at one boundary point, expressed in
/// boundary normal coordinates `(x₁, …, x_{n−1}, xₙ)` with `xₙ` the inward
/// distance to the boundary.
///
/// Indices are zero-based in the API: tangential indices run over
/// `0..n−1` and the normal index is `n − 1`. At the point the metric is the
/// identity, its tangential first derivatives vanish, and
/// `∂g_{αβ}/∂xₙ = 2κ_α δ_{αβ}`. All Christoffel symbols are derived from
/// that metric jet.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryJet {
    n: usize,
    kappa: Vec<f64>,
    /// `∂g_{αβ}/∂xₙ`, row-major `(n−1)×(n−1)`.
    dg_lower: Vec<f64>,
    mu: f64,
    dmu_dnu: f64,
    dmu_tangential: Vec<f64>,
    /// `Γ^j_{kl}` stored at `j·n² + k·n + l`.
    christoffel: Vec<f64>,
}

impl BoundaryJet {
    /// Jet of a boundary with principal curvatures `kappa` (so `n =
    /// kappa.len() + 1`), viscosity `mu`, outward normal derivative
    /// `dmu_dnu`, and tangential viscosity derivatives `dmu_tangential`
    /// (one per tangential coordinate; pass an empty slice for zero).
    ///
    /// # Errors
    /// [`GeometryError::UnsupportedDimension`] unless `n ∈ {2, 3}`;
    /// [`GeometryError::NonPositiveViscosity`] unless `mu > 0`.
    pub fn adapted(kappa: &[f64], mu: f64, dmu_dnu: f64, dmu_tangential: &[f64]) -> Result<Self, GeometryError> {
        let n = kappa.len() + 1;
        if !(2..=3).contains(&n) {
            return Err(GeometryError::UnsupportedDimension(n));
        }
        if !(mu > 0.0 && mu.is_finite()) {
            return Err(GeometryError::NonPositiveViscosity { s: f64::NAN, value: mu });
        }
        let nt = n - 1;
        let mut dmu_t = dmu_tangential.to_vec();
        dmu_t.resize(nt, 0.0);
        let mut dg_lower = vec![0.0; nt * nt];
        for (a, k) in kappa.iter().enumerate() {
            dg_lower[a * nt + a] = 2.0 * k;
        }
        let christoffel = christoffel_from_normal_jet(n, &dg_lower);
        Ok(Self { n, kappa: kappa.to_vec(), dg_lower, mu, dmu_dnu, dmu_tangential: dmu_t, christoffel })
    }

    /// Jet of a flat boundary (all curvatures zero) with constant viscosity.
    ///
    /// # Errors
    /// As [`BoundaryJet::adapted`].
    pub fn flat(n: usize, mu: f64) -> Result<Self, GeometryError> {
        if n < 2 {
            return Err(GeometryError::UnsupportedDimension(n));
        }
        Self::adapted(&vec![0.0; n - 1], mu, 0.0, &[])
    }

    /// Same jet with a different viscosity value (derivatives kept).
    #[must_use]
    pub fn with_mu(&self, mu: f64) -> Self {
        Self { mu, ..self.clone() }
    }

    /// Dimension `n` of the domain.
    #[must_use]
    pub fn dim(&self) -> usize {
        self.n
    }

    /// Principal curvatures `κ_α`.
    #[must_use]
    pub fn kappa(&self) -> &[f64] {
        &self.kappa
    }

    /// Tangential inverse metric `g^{αβ}` at the point (the identity).
    #[must_use]
    pub fn inverse_metric(&self, a: usize, b: usize) -> f64 {
        if a == b {
            1.0
        } else {
            0.0
        }
    }

    /// `∂g_{αβ}/∂xₙ` at the point.
    #[must_use]
    pub fn dg_lower_dn(&self, a: usize, b: usize) -> f64 {
        self.dg_lower[a * (self.n - 1) + b]
    }

    /// Viscosity at the point.
    #[must_use]
    pub fn mu(&self) -> f64 {
        self.mu
    }

    /// Outward normal derivative `∂μ/∂ν`.
    #[must_use]
    pub fn dmu_dnu(&self) -> f64 {
        self.dmu_dnu
    }

    /// Gradient of μ in adapted coordinates: tangential components followed
    /// by `∂μ/∂xₙ = −∂μ/∂ν` (xₙ points inward).
    #[must_use]
    pub fn grad_mu(&self) -> Vec<f64> {
        let mut g = self.dmu_tangential.clone();
        g.push(-self.dmu_dnu);
        g
    }

    /// `Γ^j_{kl}` at the point.
    #[must_use]
    pub fn christoffel(&self, j: usize, k: usize, l: usize) -> f64 {
        let n = self.n;
        self.christoffel[(j * n + k) * n + l]
    }

    /// `Γⁿ_{αβ}` (equal to `−κ_α δ_{αβ}`).
    #[must_use]
    pub fn gamma_n_ab(&self, a: usize, b: usize) -> f64 {
        self.christoffel(self.n - 1, a, b)
    }

    /// `Γ^α_{βn}` (equal to `κ_α δ_{αβ}`).
    #[must_use]
    pub fn gamma_a_bn(&self, a: usize, b: usize) -> f64 {
        self.christoffel(a, b, self.n - 1)
    }

    /// `Γ^β_{nβ}` summed over tangential β (the sum of principal curvatures).
    #[must_use]
    pub fn gamma_trace_n(&self) -> f64 {
        (0..self.n - 1).map(|b| self.christoffel(b, self.n - 1, b)).sum()
    }
}

/// Christoffel symbols `Γ^j_{kl} = ½(∂_k g_{jl} + ∂_l g_{jk} − ∂_j g_{kl})`
/// at a point where `g = I` and the only nonzero first derivatives are the
/// normal derivatives of the tangential block.
fn christoffel_from_normal_jet(n: usize, dg_lower: &[f64]) -> Vec<f64> {
    let nt = n - 1;
    // ∂_m g_{ab}
    let dg = |m: usize, a: usize, b: usize| -> f64 {
        if m == nt && a < nt && b < nt {
            dg_lower[a * nt + b]
        } else {
            0.0
        }
    };
    let mut out = vec![0.0; n * n * n];
    for j in 0..n {
        for k in 0..n {
            for l in 0..n {
                out[(j * n + k) * n + l] = 0.5 * (dg(k, j, l) + dg(l, j, k) - dg(j, k, l));
            }
        }
    }
    out
}

/// Boundary jet of a planar domain at parameter `s`.
///
/// The tangential coordinate is arclength, so `g¹¹ = 1` at the point; the
/// curvature is the signed curvature of `γ`, computed by spectral
/// differentiation; the tangential viscosity derivative is `μ′(s)/|γ′(s)|`.
///
/// # Errors
/// [`GeometryError::DegenerateCurve`] if `|γ′(s)|` vanishes, and viscosity
/// errors from [`ViscositySpec::checked_value`].
pub fn curve_jet(domain: &PlanarDomain, visc: &ViscositySpec, s: f64) -> Result<BoundaryJet, GeometryError> {
    let speed = domain.speed(s);
    let scale = domain.speed_bound();
    if !(speed > 1e-12 * scale.max(f64::MIN_POSITIVE)) {
        return Err(GeometryError::DegenerateCurve { s, speed });
    }
    let mu = visc.checked_value(s)?;
    let kappa = domain.curvature(s);
    BoundaryJet::adapted(&[kappa], mu, visc.normal_derivative(s), &[visc.parameter_derivative(s) / speed])
}

//! Evaluation context and the local model of the boundary data around the
//! adapted point.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use stokes_geometry::BoundaryJet;

use crate::error::SymbolError;

/// How the viscosity enters the principal value `c(ξ′)` of the resolvent
/// `(ψ₁ − τ)⁻¹`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MuConvention {
    /// `c = 2|ξ′|`: the viscosity factor of ψ₁ is dropped in the resolvent,
    /// reproducing the published coefficient formulas verbatim.
    Paper,
    /// `c = 2μ|ξ′|`: ψ₁ enters the resolvent unchanged. This is the only
    /// choice consistent with `λ_k(cμ) = c·λ_k(μ)`.
    #[default]
    Carried,
}

impl MuConvention {
    /// Parses `"paper"` or `"carried"`.
    #[must_use]
    pub fn parse(text: &str) -> Option<Self> {
        match text {
            "paper" => Some(Self::Paper),
            "carried" => Some(Self::Carried),
            _ => None,
        }
    }

    /// Lower-case name.
    #[must_use]
    pub fn name(self) -> &'static str {
        match self {
            Self::Paper => "paper",
            Self::Carried => "carried",
        }
    }
}

/// Sign of the normal derivative of the *upper-index* tangential metric,
/// `U_{αβ} = ∂g^{αβ}/∂xₙ`, given the lower-index jet `∂g_{αβ}/∂xₙ = 2κ_α δ_{αβ}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IndexConvention {
    /// `U = −∂g_{αβ}/∂xₙ`, as forced by differentiating `g^{αγ}g_{γβ} = δ`.
    #[default]
    MetricInverse,
    /// `U = +∂g_{αβ}/∂xₙ`: the lower-index relation reused verbatim for the
    /// upper-index derivative.
    SameAsLower,
}

impl IndexConvention {
    /// Sign multiplying the lower-index derivative.
    #[must_use]
    pub fn sign(self) -> f64 {
        match self {
            Self::MetricInverse => -1.0,
            Self::SameAsLower => 1.0,
        }
    }

    /// Snake-case name.
    #[must_use]
    pub fn name(self) -> &'static str {
        match self {
            Self::MetricInverse => "metric_inverse",
            Self::SameAsLower => "same_as_lower",
        }
    }
}

/// Finite-difference settings for the derivatives that are not available
/// in closed form (those of q₀ and of generic composed symbols).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivativeSteps {
    /// Step in ξ′ relative to `|ξ′|`.
    pub xi_relative: f64,
    /// Step in x, relative to the local length scale of the jet.
    pub x_relative: f64,
}

impl Default for DerivativeSteps {
    fn default() -> Self {
        Self { xi_relative: 1e-5, x_relative: 1e-3 }
    }
}

/// Everything needed to evaluate a symbol at one cotangent point over an
/// adapted boundary point.
#[derive(Debug, Clone)]
pub struct SymbolContext {
    jet: BoundaryJet,
    rho: f64,
    xi: Vec<f64>,
    tau: Option<Complex64>,
    mu_convention: MuConvention,
    index_convention: IndexConvention,
    steps: DerivativeSteps,
}

impl SymbolContext {
    /// Context at cotangent vector `xi` (length `n − 1`) with shift `rho ≥ 0`.
    ///
    /// # Errors
    /// [`SymbolError::DimensionMismatch`] if `xi` has the wrong length;
    /// [`SymbolError::InvalidParameter`] if `rho < 0` or an entry is not finite.
    pub fn new(jet: BoundaryJet, rho: f64, xi: &[f64]) -> Result<Self, SymbolError> {
        if xi.len() + 1 != jet.dim() {
            return Err(SymbolError::DimensionMismatch(format!(
                "ξ′ has {} components but the jet has dimension {}",
                xi.len(),
                jet.dim()
            )));
        }
        if rho.is_nan() || rho < 0.0 || !rho.is_finite() {
            return Err(SymbolError::InvalidParameter(format!("ρ must be finite and ≥ 0, got {rho}")));
        }
        if xi.iter().any(|v| !v.is_finite()) {
            return Err(SymbolError::InvalidParameter("ξ′ has a non-finite entry".into()));
        }
        Ok(Self {
            jet,
            rho,
            xi: xi.to_vec(),
            tau: None,
            mu_convention: MuConvention::default(),
            index_convention: IndexConvention::default(),
            steps: DerivativeSteps::default(),
        })
    }

    /// Same context with spectral parameter `tau`.
    #[must_use]
    pub fn with_tau(mut self, tau: Complex64) -> Self {
        self.tau = Some(tau);
        self
    }

    /// Same context with a different cotangent vector.
    #[must_use]
    pub fn with_xi(mut self, xi: &[f64]) -> Self {
        assert_eq!(xi.len(), self.xi.len(), "ξ′ length must not change");
        self.xi = xi.to_vec();
        self
    }

    /// Same context with shift `rho`.
    #[must_use]
    pub fn with_rho(mut self, rho: f64) -> Self {
        assert!(rho >= 0.0, "ρ must be ≥ 0");
        self.rho = rho;
        self
    }

    /// Same context with viscosity convention `c`.
    #[must_use]
    pub fn with_mu_convention(mut self, c: MuConvention) -> Self {
        self.mu_convention = c;
        self
    }

    /// Same context with index convention `c`.
    #[must_use]
    pub fn with_index_convention(mut self, c: IndexConvention) -> Self {
        self.index_convention = c;
        self
    }

    /// Same context with finite-difference settings `steps`.
    #[must_use]
    pub fn with_steps(mut self, steps: DerivativeSteps) -> Self {
        self.steps = steps;
        self
    }

    /// Dimension `n`.
    #[must_use]
    pub fn dim(&self) -> usize {
        self.jet.dim()
    }

    /// Boundary jet.
    #[must_use]
    pub fn jet(&self) -> &BoundaryJet {
        &self.jet
    }

    /// Shift ρ.
    #[must_use]
    pub fn rho(&self) -> f64 {
        self.rho
    }

    /// Cotangent vector ξ′.
    #[must_use]
    pub fn xi(&self) -> &[f64] {
        &self.xi
    }

    /// Spectral parameter, if set.
    #[must_use]
    pub fn tau(&self) -> Option<Complex64> {
        self.tau
    }

    /// Viscosity convention.
    #[must_use]
    pub fn mu_convention(&self) -> MuConvention {
        self.mu_convention
    }

    /// Index convention.
    #[must_use]
    pub fn index_convention(&self) -> IndexConvention {
        self.index_convention
    }

    /// Finite-difference settings.
    #[must_use]
    pub fn steps(&self) -> DerivativeSteps {
        self.steps
    }

    /// `|ξ′|_g` at the adapted point.
    #[must_use]
    pub fn xi_norm(&self) -> f64 {
        self.xi.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// Principal value `c(ξ′)` of ψ₁ seen by the resolvent under the
    /// context's viscosity convention.
    #[must_use]
    pub fn principal_value(&self) -> f64 {
        let mu = match self.mu_convention {
            MuConvention::Paper => 1.0,
            MuConvention::Carried => self.jet.mu(),
        };
        2.0 * mu * self.xi_norm()
    }

    pub(crate) fn require_nonzero_xi(&self, what: &'static str) -> Result<(), SymbolError> {
        if self.xi_norm() == 0.0 {
            Err(SymbolError::SingularSymbol(what))
        } else {
            Ok(())
        }
    }

    pub(crate) fn model(&self) -> LocalModel {
        LocalModel::new(&self.jet, self.rho, self.index_convention)
    }
}

/// Truncated Taylor series in one variable (the viscosity increment), up to
/// third order: `c[k]` multiplies `δμ^k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Taylor(pub [f64; 4]);

impl Taylor {
    /// `(a + δ)^p` expanded in δ.
    pub fn power(a: f64, p: f64) -> Self {
        let mut c = [0.0; 4];
        let mut binom = 1.0;
        for (k, ck) in c.iter_mut().enumerate() {
            *ck = binom * a.powf(p - k as f64);
            binom *= (p - k as f64) / (k as f64 + 1.0);
        }
        Self(c)
    }

    pub fn mul(self, other: Self) -> Self {
        let mut c = [0.0; 4];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate().take(4 - i) {
                c[i + j] += a * b;
            }
        }
        Self(c)
    }

    /// k-th derivative with respect to μ.
    pub fn derivative(self, k: usize) -> f64 {
        const FACT: [f64; 4] = [1.0, 1.0, 2.0, 6.0];
        self.0[k] * FACT[k]
    }
}

/// A scalar function of the viscosity, `F(μ(x))`, with spatial derivatives
/// obtained by the chain rule. Because the local model of μ is affine, all
/// spatial derivatives factor as `F^{(k)}(μ)·∂_aμ·∂_bμ⋯`.
#[derive(Debug, Clone)]
pub(crate) struct MuFunction {
    taylor: Taylor,
    grad: Vec<f64>,
}

impl MuFunction {
    pub fn value(&self) -> f64 {
        self.taylor.0[0]
    }
    pub fn d1(&self, a: usize) -> f64 {
        self.taylor.derivative(1) * self.grad[a]
    }
    pub fn d2(&self, a: usize, b: usize) -> f64 {
        self.taylor.derivative(2) * self.grad[a] * self.grad[b]
    }
    pub fn d3(&self, a: usize, b: usize, c: usize) -> f64 {
        self.taylor.derivative(3) * self.grad[a] * self.grad[b] * self.grad[c]
    }
}

/// First-order model of the boundary data around the adapted point `x₀`:
/// the inverse metric is `δ + xₙ U` on the tangential block, the Christoffel
/// symbols are frozen at their values at `x₀`, and μ is affine with the
/// jet's gradient. Second derivatives of the metric and of μ, and all
/// derivatives of the Christoffel symbols, are not carried by the jet and
/// are zero in this model.
#[derive(Debug, Clone)]
pub(crate) struct LocalModel {
    pub n: usize,
    /// `∂g^{αβ}/∂xₙ`, tangential block, row-major.
    pub upper: Vec<f64>,
    pub mu0: f64,
    pub grad_mu: Vec<f64>,
    pub rho: f64,
    pub christoffel: Vec<f64>,
}

impl LocalModel {
    pub fn new(jet: &BoundaryJet, rho: f64, convention: IndexConvention) -> Self {
        let n = jet.dim();
        let nt = n - 1;
        let mut upper = vec![0.0; nt * nt];
        for a in 0..nt {
            for b in 0..nt {
                upper[a * nt + b] = convention.sign() * jet.dg_lower_dn(a, b);
            }
        }
        let mut christoffel = vec![0.0; n * n * n];
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    christoffel[(j * n + k) * n + l] = jet.christoffel(j, k, l);
                }
            }
        }
        Self { n, upper, mu0: jet.mu(), grad_mu: jet.grad_mu(), rho, christoffel }
    }

    pub fn gamma(&self, j: usize, k: usize, l: usize) -> f64 {
        self.christoffel[(j * self.n + k) * self.n + l]
    }

    /// Full `n × n` inverse metric at `x`.
    pub fn ginv(&self, x: &[f64]) -> DMatrix<f64> {
        let n = self.n;
        let nt = n - 1;
        let xn = x[nt];
        DMatrix::from_fn(n, n, |a, b| {
            let id = if a == b { 1.0 } else { 0.0 };
            if a < nt && b < nt {
                id + xn * self.upper[a * nt + b]
            } else {
                id
            }
        })
    }

    /// `∂_k g^{ab}` (constant in the model).
    pub fn dginv(&self, k: usize) -> DMatrix<f64> {
        let n = self.n;
        let nt = n - 1;
        DMatrix::from_fn(n, n, |a, b| if k == nt && a < nt && b < nt { self.upper[a * nt + b] } else { 0.0 })
    }

    pub fn mu(&self, x: &[f64]) -> f64 {
        self.mu0 + x.iter().zip(&self.grad_mu).map(|(a, b)| a * b).sum::<f64>()
    }

    /// `μ^p` at `x`.
    pub fn mu_pow(&self, x: &[f64], p: f64) -> MuFunction {
        MuFunction { taylor: Taylor::power(self.mu(x), p), grad: self.grad_mu.clone() }
    }

    /// `(μ + ρ)^p` at `x`.
    pub fn mu_rho_pow(&self, x: &[f64], p: f64) -> MuFunction {
        MuFunction { taylor: Taylor::power(self.mu(x) + self.rho, p), grad: self.grad_mu.clone() }
    }

    /// `μ^p (μ + ρ)^q` at `x`.
    pub fn mu_mixed(&self, x: &[f64], p: f64, q: f64) -> MuFunction {
        let m = self.mu(x);
        MuFunction { taylor: Taylor::power(m, p).mul(Taylor::power(m + self.rho, q)), grad: self.grad_mu.clone() }
    }

    /// Length scale used to size spatial difference steps.
    pub fn length_scale(&self) -> f64 {
        let u = self.upper.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let g = self.grad_mu.iter().fold(0.0f64, |m, v| m.max(v.abs())) / self.mu0;
        let c = self.christoffel.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        1.0 / u.max(g).max(c).max(1.0)
    }
}

/// The adapted point `x₀ = 0` in `n` coordinates.
pub(crate) fn origin(n: usize) -> Vec<f64> {
    vec![0.0; n]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn taylor_power_matches_derivatives() {
        let t = Taylor::power(2.0, -0.5);
        assert!((t.derivative(0) - 2f64.powf(-0.5)).abs() < 1e-15);
        assert!((t.derivative(1) + 0.5 * 2f64.powf(-1.5)).abs() < 1e-15);
        assert!((t.derivative(2) - 0.75 * 2f64.powf(-2.5)).abs() < 1e-15);
        assert!((t.derivative(3) + 1.875 * 2f64.powf(-3.5)).abs() < 1e-15);
    }

    #[test]
    fn taylor_product_is_truncated_cauchy_product() {
        // μ^{-1}·μ = 1 exactly to every order.
        let p = Taylor::power(3.0, -1.0).mul(Taylor::power(3.0, 1.0));
        assert!((p.0[0] - 1.0).abs() < 1e-15);
        for k in 1..4 {
            assert!(p.0[k].abs() < 1e-15);
        }
    }

    #[test]
    fn upper_metric_sign_follows_convention() {
        let jet = BoundaryJet::adapted(&[1.0], 1.0, 0.0, &[]).unwrap();
        let inv = LocalModel::new(&jet, 0.0, IndexConvention::MetricInverse);
        let same = LocalModel::new(&jet, 0.0, IndexConvention::SameAsLower);
        assert_eq!(inv.upper[0], -2.0);
        assert_eq!(same.upper[0], 2.0);
        assert_eq!(inv.ginv(&[0.0, 0.1])[(0, 0)], 1.0 - 0.2);
    }
}

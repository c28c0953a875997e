//! Boundary viscosity data.

use num_complex::Complex64;

use crate::error::GeometryError;

/// Viscosity on the boundary: either a constant, or a boundary trace μ(s)
/// together with its outward normal derivative ∂μ/∂ν(s), both as Fourier
/// series in the curve parameter (same convention as the curve itself).
#[derive(Debug, Clone, PartialEq)]
pub enum ViscositySpec {
    Constant(f64),
    Variable { trace: Vec<Complex64>, normal_derivative: Vec<Complex64> },
}

fn eval(coeffs: &[Complex64], s: f64, order: u32) -> f64 {
    coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let kf = k as f64;
            (c * Complex64::new(0.0, kf).powu(order) * Complex64::from_polar(1.0, kf * s)).re
        })
        .sum()
}

impl ViscositySpec {
    /// μ(s).
    #[must_use]
    pub fn value(&self, s: f64) -> f64 {
        match self {
            Self::Constant(mu) => *mu,
            Self::Variable { trace, .. } => eval(trace, s, 0),
        }
    }

    /// μ(s), checked to be positive and finite.
    ///
    /// # Errors
    /// [`GeometryError::NonPositiveViscosity`] otherwise.
    pub fn checked_value(&self, s: f64) -> Result<f64, GeometryError> {
        let v = self.value(s);
        if v > 0.0 && v.is_finite() {
            Ok(v)
        } else {
            Err(GeometryError::NonPositiveViscosity { s, value: v })
        }
    }

    /// dμ/ds along the curve parameter.
    #[must_use]
    pub fn parameter_derivative(&self, s: f64) -> f64 {
        match self {
            Self::Constant(_) => 0.0,
            Self::Variable { trace, .. } => eval(trace, s, 1),
        }
    }

    /// Outward normal derivative ∂μ/∂ν(s).
    #[must_use]
    pub fn normal_derivative(&self, s: f64) -> f64 {
        match self {
            Self::Constant(_) => 0.0,
            Self::Variable { normal_derivative, .. } => eval(normal_derivative, s, 0),
        }
    }

    /// The constant value, if the viscosity is constant.
    #[must_use]
    pub fn as_constant(&self) -> Option<f64> {
        match self {
            Self::Constant(mu) => Some(*mu),
            Self::Variable { .. } => None,
        }
    }

    /// Checks positivity on `samples` equispaced parameter values.
    ///
    /// # Errors
    /// The first nonpositive sample.
    pub fn validate(&self, samples: usize) -> Result<(), GeometryError> {
        let h = std::f64::consts::TAU / samples.max(1) as f64;
        for i in 0..samples.max(1) {
            self.checked_value(i as f64 * h)?;
        }
        Ok(())
    }

    /// Boundary average of μ with respect to the curve parameter.
    #[must_use]
    pub fn parameter_mean(&self) -> f64 {
        match self {
            Self::Constant(mu) => *mu,
            Self::Variable { trace, .. } => trace.first().map_or(0.0, |c| c.re),
        }
    }
}

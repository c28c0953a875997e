//! JSON domain files.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::curve::{PlanarDomain, ValidationOptions};
use crate::error::GeometryError;
use crate::viscosity::ViscositySpec;

/// Viscosity as written in a domain file: a number, or Fourier coefficient
/// lists for the boundary trace and the outward normal derivative.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ViscosityField {
    Constant(f64),
    Variable { trace_coeffs: Vec<[f64; 2]>, normal_deriv_coeffs: Vec<[f64; 2]> },
}

/// On-disk form of a domain: `{label, x_coeffs, y_coeffs, mu}` with each
/// coefficient written as `[re, im]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DomainFile {
    pub label: String,
    pub x_coeffs: Vec<[f64; 2]>,
    pub y_coeffs: Vec<[f64; 2]>,
    pub mu: ViscosityField,
}

fn to_complex(v: &[[f64; 2]]) -> Vec<Complex64> {
    v.iter().map(|c| Complex64::new(c[0], c[1])).collect()
}

fn from_complex(v: &[Complex64]) -> Vec<[f64; 2]> {
    v.iter().map(|c| [c.re, c.im]).collect()
}

impl DomainFile {
    /// Parses a domain file.
    ///
    /// # Errors
    /// [`GeometryError::Parse`] for malformed JSON or missing fields.
    pub fn from_json(text: &str) -> Result<Self, GeometryError> {
        Ok(serde_json::from_str(text)?)
    }

    /// Serializes the file as pretty-printed JSON.
    #[must_use]
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("domain files always serialize")
    }

    /// Writes a domain and its viscosity in file form.
    #[must_use]
    pub fn from_parts(domain: &PlanarDomain, visc: &ViscositySpec) -> Self {
        let mu = match visc {
            ViscositySpec::Constant(m) => ViscosityField::Constant(*m),
            ViscositySpec::Variable { trace, normal_derivative } => ViscosityField::Variable {
                trace_coeffs: from_complex(trace),
                normal_deriv_coeffs: from_complex(normal_derivative),
            },
        };
        Self {
            label: domain.label().to_owned(),
            x_coeffs: from_complex(domain.x_coefficients()),
            y_coeffs: from_complex(domain.y_coefficients()),
            mu,
        }
    }

    /// Builds and validates the domain and viscosity described by the file.
    ///
    /// # Errors
    /// [`GeometryError::InvalidDomain`] for empty coefficient lists, and any
    /// domain or viscosity validation failure.
    pub fn into_parts(&self, options: &ValidationOptions) -> Result<(PlanarDomain, ViscositySpec), GeometryError> {
        if self.x_coeffs.is_empty() || self.y_coeffs.is_empty() {
            return Err(GeometryError::InvalidDomain("x_coeffs and y_coeffs must be non-empty".into()));
        }
        let domain =
            PlanarDomain::from_coefficients(self.label.clone(), to_complex(&self.x_coeffs), to_complex(&self.y_coeffs));
        domain.validate(options)?;
        let visc = match &self.mu {
            ViscosityField::Constant(m) => ViscositySpec::Constant(*m),
            ViscosityField::Variable { trace_coeffs, normal_deriv_coeffs } => {
                if trace_coeffs.is_empty() {
                    return Err(GeometryError::InvalidDomain("mu.trace_coeffs must be non-empty".into()));
                }
                ViscositySpec::Variable {
                    trace: to_complex(trace_coeffs),
                    normal_derivative: to_complex(normal_deriv_coeffs),
                }
            }
        };
        visc.validate(options.samples)?;
        Ok((domain, visc))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_preserves_domain() {
        let d = PlanarDomain::ellipse(2.0, 1.0);
        let f = DomainFile::from_parts(&d, &ViscositySpec::Constant(3.0));
        let back = DomainFile::from_json(&f.to_json()).unwrap();
        let (d2, v2) = back.into_parts(&ValidationOptions::default()).unwrap();
        assert_eq!(d2.x_coefficients(), d.x_coefficients());
        assert_eq!(v2, ViscositySpec::Constant(3.0));
    }

    #[test]
    fn variable_viscosity_parses() {
        let text = r#"{"label":"c","x_coeffs":[[0,0],[1,0]],"y_coeffs":[[0,0],[0,-1]],
            "mu":{"trace_coeffs":[[2,0],[1,0]],"normal_deriv_coeffs":[]}}"#;
        let (_, v) = DomainFile::from_json(text).unwrap().into_parts(&ValidationOptions::default()).unwrap();
        assert!((v.value(0.0) - 3.0).abs() < 1e-15);
        assert!((v.value(std::f64::consts::PI) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn negative_viscosity_is_rejected() {
        let text = r#"{"label":"c","x_coeffs":[[0,0],[1,0]],"y_coeffs":[[0,0],[0,-1]],"mu":-1.0}"#;
        let err = DomainFile::from_json(text).unwrap().into_parts(&ValidationOptions::default());
        assert!(matches!(err, Err(GeometryError::NonPositiveViscosity { .. })));
    }
}

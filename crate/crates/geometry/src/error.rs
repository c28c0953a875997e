use thiserror::Error;

/// Failures of domain validation and boundary-data evaluation.
#[derive(Debug, Error)]
pub enum GeometryError {
    #[error("degenerate curve: speed {speed:.3e} at s = {s:.6}")]
    DegenerateCurve { s: f64, speed: f64 },
    #[error("curve is not counterclockwise (signed area {signed_area:.6e})")]
    NotCounterclockwise { signed_area: f64 },
    #[error("curve self-intersects near parameters s = {s1:.6} and s = {s2:.6}")]
    SelfIntersection { s1: f64, s2: f64 },
    #[error("viscosity must be positive, got {value} at s = {s:.6}")]
    NonPositiveViscosity { s: f64, value: f64 },
    #[error("invalid domain: {0}")]
    InvalidDomain(String),
    #[error("unsupported dimension {0}; boundary jets exist for n = 2 and n = 3")]
    UnsupportedDimension(usize),
    #[error("malformed domain file: {0}")]
    Parse(#[from] serde_json::Error),
}

use stokes_geometry::GeometryError;
use thiserror::Error;

/// Failures of the eigensolvers.
#[derive(Debug, Error)]
pub enum EigenError {
    /// A parameter is outside its admissible range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    /// Fewer eigenvalues are available than were requested.
    #[error("requested {requested} eigenvalues but the discretization provides only {available}")]
    InsufficientModes { requested: usize, available: usize },
    /// The domain is outside what the solver supports.
    #[error("unsupported domain: {0}")]
    UnsupportedDomain(String),
    /// A numerical decomposition is too ill-conditioned to trust.
    #[error("ill-conditioned {stage}: {detail}")]
    Conditioning { stage: &'static str, detail: String },
    /// A dense factorisation failed.
    #[error("linear algebra failure in {0}")]
    LinearAlgebra(&'static str),
    /// Invalid geometry.
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    /// Failure writing spectrum files.
    #[error("output error: {0}")]
    Output(String),
}

//! Steklov eigenvalues of the Stokes Dirichlet-to-Neumann map on planar
//! domains with constant viscosity.
//!
//! The DtN map sends a flux-free boundary velocity `φ` to the traction
//! `σ_μ(u, p)ν` of the Stokes flow with `u|∂Ω = φ`; its eigenvalues are the
//! stationary values of `2μ∫|Def u|² / ∮|u|²`. Three independent solvers:
//!
//! - [`disk_mode_spectrum`]: exact per-Fourier-mode solve on a disk;
//! - [`galerkin_spectrum`]: Rayleigh–Ritz on divergence-free polynomials;
//! - [`mfs_dtn`]: method of fundamental solutions with Stokeslets.
//!
//! The three rigid motions are always zero modes.

// Dense assembly loops index several arrays in lockstep.
#![allow(clippy::needless_range_loop)]
// Positive-parameter checks are written as `!(x > 0.0)` so that NaN fails.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod disk;
mod error;
mod field;
mod galerkin;
mod mfs;
mod quadrature;
mod spectrum;

use stokes_geometry::PlanarDomain;

pub use disk::{
    disk_mode_count, disk_mode_spectrum, disk_modes_for_count, disk_spectrum_with_count, mode_dtn_matrix,
    mode_traction_matrix, mode_velocity_matrix, MAX_DISK_MODE,
};
pub use error::EigenError;
pub use field::{
    boundary_energy, deformation_norm2, dissipation, rayleigh_check, rayleigh_quotient, RayleighOptions, RigidMotion,
    StokesletField, VelocityField,
};
pub use galerkin::{
    galerkin_spectrum, ChebyshevBasis, GalerkinSolution, PolynomialField, StreamJet, MAX_GALERKIN_DEGREE, RANGE_GAP,
    RANGE_THRESHOLD,
};
pub use mfs::{mfs_dtn, MfsOptions, MfsSolution};
pub use quadrature::{BoundaryQuadrature, InteriorQuadrature};
pub use spectrum::{ModeTag, SolverKind, Spectrum, NEGATIVE_TOLERANCE, ZERO_THRESHOLD_FACTOR};

/// Solver selection with its discretization parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum Method {
    /// Exact disk modes up to angular index `k_max` (`None`: just enough for
    /// the requested count).
    DiskModes { k_max: Option<usize> },
    /// Polynomial Galerkin of the given velocity degree.
    GalerkinPoly { degree: usize },
    /// Method of fundamental solutions.
    Mfs(MfsOptions),
}

/// A complete eigenvalue request.
#[derive(Debug, Clone)]
pub struct SpectrumRequest {
    pub domain: PlanarDomain,
    pub mu: f64,
    pub method: Method,
    /// Number of eigenvalues wanted (including zero modes).
    pub count: usize,
}

/// Relative tolerance for recognising a disk among Fourier curves.
const CIRCLE_TOLERANCE: f64 = 1e-12;

/// Radius of `domain` if it is a circle.
///
/// # Errors
/// [`EigenError::UnsupportedDomain`] otherwise.
pub fn circle_radius(domain: &PlanarDomain) -> Result<f64, EigenError> {
    let c = domain.centroid();
    let radii: Vec<f64> = domain.sample(1024).iter().map(|p| (p[0] - c[0]).hypot(p[1] - c[1])).collect();
    let mean = radii.iter().sum::<f64>() / radii.len() as f64;
    let dev = radii.iter().map(|r| (r - mean).abs()).fold(0.0, f64::max);
    if dev > CIRCLE_TOLERANCE * mean {
        return Err(EigenError::UnsupportedDomain(format!(
            "disk-mode solver needs a circle; '{}' deviates by {:e} relative",
            domain.label(),
            dev / mean
        )));
    }
    Ok(mean)
}

/// Runs the requested solver and returns exactly `count` eigenvalues.
///
/// # Errors
/// Solver errors, and [`EigenError::InsufficientModes`] if the
/// discretization yields fewer than `count` eigenvalues.
pub fn solve(request: &SpectrumRequest) -> Result<Spectrum, EigenError> {
    if request.count == 0 {
        return Err(EigenError::InvalidParameter("eigenvalue count must be at least 1".into()));
    }
    let mut spectrum = match &request.method {
        Method::DiskModes { k_max } => {
            let radius = circle_radius(&request.domain)?;
            match k_max {
                Some(k) => disk_mode_spectrum(radius, request.mu, *k)?,
                None => disk_spectrum_with_count(radius, request.mu, request.count)?,
            }
        }
        Method::GalerkinPoly { degree } => galerkin_spectrum(&request.domain, request.mu, *degree)?.spectrum,
        Method::Mfs(options) => {
            let options = MfsOptions { keep_basis: false, ..*options };
            mfs_dtn(&request.domain, request.mu, &options)?.spectrum
        }
    };
    spectrum.truncate(request.count)?;
    Ok(spectrum)
}

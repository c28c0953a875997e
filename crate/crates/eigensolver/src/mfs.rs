//! Method of fundamental solutions for the Stokes Dirichlet-to-Neumann map.
//!
//! Velocities are superpositions of Stokeslets placed on a curve outside the
//! domain, so every trial field solves the Stokes system exactly inside and
//! is automatically divergence-free (hence flux-free on the boundary). With
//! collocation weights `W` (trapezoid, arc length) and the weighted velocity
//! matrix `W^{1/2}U = QΣVᵀ`, the columns of `Q` are an `L²(∂Ω)`-orthonormal
//! basis of attainable boundary velocities and
//!
//! ```text
//! D = Qᵀ W^{1/2} T V Σ⁻¹
//! ```
//!
//! is the DtN map in that basis (`T` the traction matrix). Its
//! eigenvalues are the discrete Steklov eigenvalues.

use std::collections::BTreeMap;

use faer::{Mat, Side};
use stokes_geometry::PlanarDomain;

use crate::error::EigenError;
use crate::field::{stokeslet_traction, stokeslet_velocity, StokesletField};
use crate::quadrature::BoundaryQuadrature;
use crate::spectrum::{ModeTag, SolverKind, Spectrum};

/// Parameters of [`mfs_dtn`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MfsOptions {
    /// Number of Stokeslet sources.
    pub n_sources: usize,
    /// Number of collocation nodes (default `2·n_sources`).
    pub n_collocation: Option<usize>,
    /// Source offset `δ ∈ (0, 1)`: sources sit at distance `δ·ℓ` along the
    /// outward normal, `ℓ = perimeter/2π` (so `δ` dilates the unit circle to
    /// radius `1 + δ`).
    pub offset: f64,
    /// Singular values below `rank_tolerance·σ_max` are truncated.
    pub rank_tolerance: f64,
    /// Largest acceptable least-squares residual when reproducing rigid
    /// motions.
    pub residual_tolerance: f64,
    /// Asymmetry `‖D − Dᵀ‖/‖D‖` above this raises a warning.
    pub asymmetry_tolerance: f64,
    /// Flux leakage above this triggers an explicit projection.
    pub flux_tolerance: f64,
    /// Keep the boundary basis and source map (needed for eigenfields).
    pub keep_basis: bool,
}

impl Default for MfsOptions {
    fn default() -> Self {
        Self {
            n_sources: 128,
            n_collocation: None,
            offset: 0.5,
            rank_tolerance: 1e-10,
            residual_tolerance: 1e-8,
            asymmetry_tolerance: 1e-6,
            flux_tolerance: 1e-8,
            keep_basis: true,
        }
    }
}

/// Result of [`mfs_dtn`].
#[derive(Debug, Clone)]
pub struct MfsSolution {
    /// Discrete spectrum.
    pub spectrum: Spectrum,
    /// Symmetrised DtN matrix in the orthonormal boundary basis.
    pub reduced_dtn: Mat<f64>,
    /// Eigenvectors of `reduced_dtn`, columns ordered like the spectrum.
    pub eigenvectors: Mat<f64>,
    /// Collocation quadrature.
    pub collocation: BoundaryQuadrature,
    /// Source locations.
    pub sources: Vec<[f64; 2]>,
    /// Viscosity.
    pub mu: f64,
    /// Orthonormal boundary basis `Q_r` (rows: `(u₁, u₂)` per node,
    /// `W^{1/2}`-weighted), if kept.
    pub boundary_basis: Option<Mat<f64>>,
    /// Map `V_r Σ_r⁻¹` from basis coefficients to source strengths, if kept.
    pub source_map: Option<Mat<f64>>,
}

impl MfsSolution {
    /// DtN matrix acting on pointwise velocity samples at the collocation
    /// nodes, `W^{−1/2} Q D Qᵀ W^{1/2}` (requires the kept basis).
    #[must_use]
    pub fn nodal_dtn(&self) -> Option<Mat<f64>> {
        let q = self.boundary_basis.as_ref()?;
        let w: Vec<f64> = self.collocation.weights.iter().flat_map(|w| [w.sqrt(), w.sqrt()]).collect();
        let core = q * &self.reduced_dtn * q.transpose();
        Some(Mat::from_fn(core.nrows(), core.ncols(), |i, j| core[(i, j)] * w[j] / w[i]))
    }

    /// Stokeslet representation of the `k`-th eigenfield (unit boundary
    /// energy), if the basis was kept.
    #[must_use]
    pub fn eigenfield(&self, k: usize) -> Option<StokesletField> {
        let map = self.source_map.as_ref()?;
        let c = map * self.eigenvectors.col(k);
        Some(StokesletField {
            sources: self.sources.clone(),
            strengths: (0..self.sources.len()).map(|j| [c[2 * j], c[2 * j + 1]]).collect(),
            mu: self.mu,
        })
    }
}

/// Discretizes the DtN map by Stokeslets and returns its spectrum.
///
/// # Errors
/// [`EigenError::InvalidParameter`] for out-of-range options;
/// [`EigenError::Conditioning`] if rigid motions cannot be reproduced to
/// `residual_tolerance` (the recorded residual is in the message).
pub fn mfs_dtn(domain: &PlanarDomain, mu: f64, options: &MfsOptions) -> Result<MfsSolution, EigenError> {
    let ns = options.n_sources;
    let nc = options.n_collocation.unwrap_or(2 * ns);
    if ns < 4 {
        return Err(EigenError::InvalidParameter(format!("mfs needs at least 4 sources, got {ns}")));
    }
    if nc < ns {
        return Err(EigenError::InvalidParameter(format!(
            "collocation count {nc} must be at least the source count {ns}"
        )));
    }
    if !(options.offset > 0.0 && options.offset < 1.0) {
        return Err(EigenError::InvalidParameter(format!("mfs offset must lie in (0, 1), got {}", options.offset)));
    }
    if !(mu > 0.0 && mu.is_finite()) {
        return Err(EigenError::InvalidParameter(format!("viscosity must be positive, got {mu}")));
    }
    if !(options.rank_tolerance > 0.0 && options.rank_tolerance < 1.0) {
        return Err(EigenError::InvalidParameter("rank tolerance must lie in (0, 1)".into()));
    }

    let collocation = BoundaryQuadrature::trapezoid(domain, nc);
    let length_scale = collocation.weights.iter().sum::<f64>() / std::f64::consts::TAU;
    let dist = options.offset * length_scale;
    let sources: Vec<[f64; 2]> = (0..ns)
        .map(|j| {
            let s = std::f64::consts::TAU * j as f64 / ns as f64;
            let (p, n) = (domain.point(s), domain.outward_normal(s));
            [p[0] + dist * n[0], p[1] + dist * n[1]]
        })
        .collect();

    // Weighted velocity and traction matrices (2nc × 2ns).
    let sqrt_w: Vec<f64> = collocation.weights.iter().map(|w| w.sqrt()).collect();
    let vel_scale = 1.0 / (4.0 * std::f64::consts::PI * mu);
    let mut u = Mat::<f64>::zeros(2 * nc, 2 * ns);
    let mut t = Mat::<f64>::zeros(2 * nc, 2 * ns);
    for i in 0..nc {
        let x = collocation.points[i];
        let nu = collocation.normals[i];
        for (j, y) in sources.iter().enumerate() {
            let r = [x[0] - y[0], x[1] - y[1]];
            for (c, f) in [[1.0, 0.0], [0.0, 1.0]].into_iter().enumerate() {
                let v = stokeslet_velocity(r, f);
                let tr = stokeslet_traction(r, f, nu);
                u[(2 * i, 2 * j + c)] = sqrt_w[i] * vel_scale * v[0];
                u[(2 * i + 1, 2 * j + c)] = sqrt_w[i] * vel_scale * v[1];
                t[(2 * i, 2 * j + c)] = sqrt_w[i] * tr[0];
                t[(2 * i + 1, 2 * j + c)] = sqrt_w[i] * tr[1];
            }
        }
    }

    let svd = u.thin_svd().map_err(|_| EigenError::LinearAlgebra("svd of the Stokeslet velocity matrix"))?;
    let sing = svd.S().column_vector();
    let smax = sing[0];
    let rank = (0..2 * ns).take_while(|&i| sing[i] > options.rank_tolerance * smax).count();
    let q = svd.U().subcols(0, rank).to_owned();
    let source_map = Mat::<f64>::from_fn(2 * ns, rank, |i, j| svd.V()[(i, j)] / sing[j]);
    drop(u);

    // Least-squares residual of the rigid motions in the attainable span.
    let center = domain.centroid();
    let mut rigid_residual: f64 = 0.0;
    for m in 0..3 {
        let pattern = Mat::<f64>::from_fn(2 * nc, 1, |row, _| {
            let i = row / 2;
            let c = row % 2;
            let x = collocation.points[i];
            let val = match m {
                0 => [1.0, 0.0][c],
                1 => [0.0, 1.0][c],
                _ => [-(x[1] - center[1]), x[0] - center[0]][c],
            };
            sqrt_w[i] * val
        });
        let coef = q.transpose() * &pattern;
        let resid = &pattern - &q * &coef;
        rigid_residual = rigid_residual.max(resid.norm_l2() / pattern.norm_l2());
    }
    if !(rigid_residual <= options.residual_tolerance) {
        return Err(EigenError::Conditioning {
            stage: "mfs least squares",
            detail: format!(
                "rigid motions reproduced only to relative residual {rigid_residual:e} (tolerance {:e}); increase sources or offset",
                options.residual_tolerance
            ),
        });
    }

    let traction_basis = &t * &source_map;
    drop(t);
    let d = q.transpose() * &traction_basis;
    let asym = (&d - d.transpose()).norm_l2() / d.norm_l2();
    let mut d_sym = Mat::<f64>::from_fn(rank, rank, |i, j| 0.5 * (d[(i, j)] + d[(j, i)]));

    // Flux compatibility: the weighted normal field projected on the basis.
    let mut normal = Mat::<f64>::from_fn(2 * nc, 1, |row, _| sqrt_w[row / 2] * collocation.normals[row / 2][row % 2]);
    normal *= faer::Scale(1.0 / normal.norm_l2());
    let flux = q.transpose() * &normal;
    let leakage = flux.norm_l2();
    let mut warnings = Vec::new();
    let projected = leakage > options.flux_tolerance;
    if projected {
        let f = &flux * faer::Scale(1.0 / leakage);
        let p = Mat::<f64>::identity(rank, rank) - &f * f.transpose();
        d_sym = &p * &d_sym * &p;
        warnings.push(format!("flux leakage {leakage:e} above tolerance; projected out"));
    }
    if asym > options.asymmetry_tolerance {
        warnings.push(format!("DtN asymmetry {asym:e} exceeds tolerance {:e}", options.asymmetry_tolerance));
    }

    let eig = d_sym
        .self_adjoint_eigen(Side::Lower)
        .map_err(|_| EigenError::LinearAlgebra("symmetric eigensolver of the MFS DtN matrix"))?;
    let values = eig.S().column_vector();
    let vecs = eig.U();
    let mut keep: Vec<usize> = (0..rank).collect();
    if projected {
        // The projected direction itself returns a spurious zero.
        let f = &flux * faer::Scale(1.0 / leakage);
        let spurious = (0..rank)
            .max_by(|&a, &b| {
                let dot = |k: usize| (0..rank).map(|i| f[(i, 0)] * vecs[(i, k)]).sum::<f64>().abs();
                let (pa, pb) = (dot(a), dot(b));
                pa.total_cmp(&pb)
            })
            .expect("nonempty basis");
        keep.retain(|&k| k != spurious);
    }
    let eigenvectors = Mat::<f64>::from_fn(rank, keep.len(), |i, j| vecs[(i, keep[j])]);
    let entries: Vec<(f64, ModeTag, u64)> = keep
        .iter()
        .enumerate()
        .map(|(n, &k)| {
            (values[k], ModeTag { fourier_index: None, label: format!("mfs:{n}"), multiplicity_hint: 1 }, n as u64)
        })
        .collect();

    let mut parameters = BTreeMap::new();
    parameters.insert("n_sources".into(), ns as f64);
    parameters.insert("n_collocation".into(), nc as f64);
    parameters.insert("offset".into(), options.offset);
    parameters.insert("rank_tolerance".into(), options.rank_tolerance);
    parameters.insert("mu".into(), mu);
    let mut diagnostics = BTreeMap::new();
    diagnostics.insert("asymmetry".into(), asym);
    diagnostics.insert("flux_leakage".into(), leakage);
    diagnostics.insert("rank".into(), rank as f64);
    diagnostics.insert("condition_retained".into(), smax / sing[rank - 1]);
    diagnostics.insert("rigid_residual".into(), rigid_residual);
    let spectrum = Spectrum::from_unsorted(entries, SolverKind::Mfs, parameters, diagnostics, warnings)?;
    Ok(MfsSolution {
        spectrum,
        reduced_dtn: d_sym,
        eigenvectors,
        mu,
        boundary_basis: options.keep_basis.then_some(q),
        source_map: options.keep_basis.then_some(source_map),
        collocation,
        sources,
    })
}

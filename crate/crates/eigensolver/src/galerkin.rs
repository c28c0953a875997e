//! Galerkin discretization of the Steklov pencil on a divergence-free
//! polynomial trial space.
//!
//! Trial fields are `v = ∇⊥p = (∂_y p, −∂_x p)` for scalar polynomials `p` of
//! total degree `≤ degree + 1`, expanded in tensor Chebyshev polynomials
//! `T_i(X) T_j(Y)` on the bounding box (better conditioned than monomials).
//! The space contains the two translations and the rotation. The pencil is
//! `A x = λ B x` with stiffness `A = 2μ∫⟨Def v_i, Def v_j⟩` and boundary mass
//! `B = ∮ v_i·v_j`. Fields with vanishing boundary trace (interior bubbles)
//! span the null space of `B`; they carry infinite eigenvalues and are
//! eliminated by a Schur complement.

use std::collections::BTreeMap;

use faer::linalg::solvers::Solve;
use faer::{Mat, Side};
use stokes_geometry::PlanarDomain;

use crate::error::EigenError;
use crate::field::VelocityField;
use crate::quadrature::{BoundaryQuadrature, InteriorQuadrature};
use crate::spectrum::{ModeTag, SolverKind, Spectrum};

/// Largest supported polynomial degree of the velocity.
pub const MAX_GALERKIN_DEGREE: usize = 20;

/// Relative threshold on the eigenvalues of `B` separating the boundary
/// range from the interior bubbles.
pub const RANGE_THRESHOLD: f64 = 1e-10;

/// Minimum ratio between the smallest retained and the largest discarded
/// eigenvalue of `B`.
pub const RANGE_GAP: f64 = 1e2;

/// Tensor Chebyshev stream-function basis on a box.
#[derive(Debug, Clone, PartialEq)]
pub struct ChebyshevBasis {
    /// Box center.
    pub center: [f64; 2],
    /// Box half-widths.
    pub half_width: [f64; 2],
    /// Index pairs `(i, j)` with `1 ≤ i + j ≤ degree + 1`.
    pub indices: Vec<(usize, usize)>,
    /// Maximum total degree of `p`.
    pub max_degree: usize,
}

/// `T_n(x)`, `T_n′(x)`, `T_n″(x)` for `n ≤ max`.
fn chebyshev_table(x: f64, max: usize) -> [Vec<f64>; 3] {
    let mut t = vec![0.0; max + 1];
    let mut d = vec![0.0; max + 1];
    let mut dd = vec![0.0; max + 1];
    t[0] = 1.0;
    if max >= 1 {
        t[1] = x;
        d[1] = 1.0;
    }
    for n in 1..max {
        t[n + 1] = 2.0 * x * t[n] - t[n - 1];
        d[n + 1] = 2.0 * t[n] + 2.0 * x * d[n] - d[n - 1];
        dd[n + 1] = 4.0 * d[n] + 2.0 * x * dd[n] - dd[n - 1];
    }
    [t, d, dd]
}

/// Derivatives of one basis function at a point.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct StreamJet {
    pub px: f64,
    pub py: f64,
    pub pxx: f64,
    pub pxy: f64,
    pub pyy: f64,
}

impl ChebyshevBasis {
    /// Basis of stream functions of total degree `≤ degree + 1` on the
    /// bounding box of `domain`.
    #[must_use]
    pub fn for_domain(domain: &PlanarDomain, degree: usize) -> Self {
        let pts = domain.sample(4096);
        let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
        for p in &pts {
            for c in 0..2 {
                lo[c] = lo[c].min(p[c]);
                hi[c] = hi[c].max(p[c]);
            }
        }
        let center = [0.5 * (lo[0] + hi[0]), 0.5 * (lo[1] + hi[1])];
        let half_width = [0.5 * (hi[0] - lo[0]), 0.5 * (hi[1] - lo[1])];
        let max_degree = degree + 1;
        let mut indices = Vec::new();
        for total in 1..=max_degree {
            for i in (0..=total).rev() {
                indices.push((i, total - i));
            }
        }
        Self { center, half_width, indices, max_degree }
    }

    /// Number of basis functions.
    #[must_use]
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    /// Whether the basis is empty.
    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// Jets of every basis function at `x`.
    #[must_use]
    pub fn jets(&self, x: [f64; 2]) -> Vec<StreamJet> {
        let (hx, hy) = (self.half_width[0], self.half_width[1]);
        let [tx, dx, ddx] = chebyshev_table((x[0] - self.center[0]) / hx, self.max_degree);
        let [ty, dy, ddy] = chebyshev_table((x[1] - self.center[1]) / hy, self.max_degree);
        self.indices
            .iter()
            .map(|&(i, j)| StreamJet {
                px: dx[i] * ty[j] / hx,
                py: tx[i] * dy[j] / hy,
                pxx: ddx[i] * ty[j] / (hx * hx),
                pxy: dx[i] * dy[j] / (hx * hy),
                pyy: tx[i] * ddy[j] / (hy * hy),
            })
            .collect()
    }
}

/// Divergence-free polynomial field `∇⊥(Σ c_i p_i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialField {
    pub basis: ChebyshevBasis,
    pub coefficients: Vec<f64>,
}

impl VelocityField for PolynomialField {
    fn velocity(&self, x: [f64; 2]) -> [f64; 2] {
        let mut u = [0.0; 2];
        for (j, c) in self.basis.jets(x).iter().zip(&self.coefficients) {
            u[0] += c * j.py;
            u[1] -= c * j.px;
        }
        u
    }

    fn gradient(&self, x: [f64; 2]) -> [[f64; 2]; 2] {
        let mut g = [[0.0; 2]; 2];
        for (j, c) in self.basis.jets(x).iter().zip(&self.coefficients) {
            g[0][0] += c * j.pxy;
            g[0][1] += c * j.pyy;
            g[1][0] -= c * j.pxx;
            g[1][1] -= c * j.pxy;
        }
        g
    }
}

/// Result of [`galerkin_spectrum`]: the spectrum plus eigenvectors in the
/// stream-function basis (columns ordered like the spectrum).
#[derive(Debug, Clone)]
pub struct GalerkinSolution {
    pub spectrum: Spectrum,
    pub basis: ChebyshevBasis,
    pub vectors: Mat<f64>,
}

impl GalerkinSolution {
    /// The `k`-th eigenfield (0-based, ascending eigenvalue), normalised to
    /// unit boundary energy.
    #[must_use]
    pub fn eigenfield(&self, k: usize) -> PolynomialField {
        PolynomialField {
            basis: self.basis.clone(),
            coefficients: (0..self.vectors.nrows()).map(|i| self.vectors[(i, k)]).collect(),
        }
    }
}

/// Steklov eigenpairs of the Galerkin pencil for velocity degree `degree`.
///
/// # Errors
/// [`EigenError::InvalidParameter`] for `degree` outside
/// `[1, MAX_GALERKIN_DEGREE]` or nonpositive `mu`;
/// [`EigenError::UnsupportedDomain`] if the domain is not star-shaped about
/// its centroid; [`EigenError::Conditioning`] if the range of `B` has no
/// clear spectral gap or the bubble block is not positive definite.
pub fn galerkin_spectrum(domain: &PlanarDomain, mu: f64, degree: usize) -> Result<GalerkinSolution, EigenError> {
    if degree == 0 || degree > MAX_GALERKIN_DEGREE {
        return Err(EigenError::InvalidParameter(format!(
            "galerkin degree must lie in [1, {MAX_GALERKIN_DEGREE}], got {degree}"
        )));
    }
    if !(mu > 0.0 && mu.is_finite()) {
        return Err(EigenError::InvalidParameter(format!("viscosity must be positive, got {mu}")));
    }
    let basis = ChebyshevBasis::for_domain(domain, degree);
    let nb = basis.len();
    // Polynomial integrands of degree ≤ 2·degree in x: exact in ρ with
    // degree + 4 Gauss nodes; the angular rule resolves the trigonometric
    // content of the traces.
    let n_angular = 8 * (degree + 2) * domain.max_mode().max(1);
    let interior = InteriorQuadrature::star(domain, degree + 4, n_angular)?;
    let boundary = BoundaryQuadrature::trapezoid(domain, n_angular);

    // Stiffness A = 2μ GᵀG with rows √w·(√2 p_xy, (p_yy − p_xx)/√2) so that
    // GᵀG integrates 2 p_xy p′_xy + ½(p_yy − p_xx)(p′_yy − p′_xx) = Def:Def′.
    let ni = interior.points.len();
    let mut g = Mat::<f64>::zeros(2 * ni, nb);
    for (q, (&x, &w)) in interior.points.iter().zip(&interior.weights).enumerate() {
        let sw = w.sqrt();
        for (b, j) in basis.jets(x).iter().enumerate() {
            g[(2 * q, b)] = sw * std::f64::consts::SQRT_2 * j.pxy;
            g[(2 * q + 1, b)] = sw * (j.pyy - j.pxx) / std::f64::consts::SQRT_2;
        }
    }
    let a = (g.transpose() * &g) * faer::Scale(2.0 * mu);

    // Boundary trace matrix H with rows √w·(v₁, v₂); B = HᵀH.
    let nq = boundary.len();
    let mut h = Mat::<f64>::zeros(2 * nq, nb);
    for (q, (&x, &w)) in boundary.points.iter().zip(&boundary.weights).enumerate() {
        let sw = w.sqrt();
        for (b, j) in basis.jets(x).iter().enumerate() {
            h[(2 * q, b)] = sw * j.py;
            h[(2 * q + 1, b)] = -sw * j.px;
        }
    }
    // Eigen-decomposition of B through the SVD of H (squares exactly, keeps
    // the small eigenvalues accurate).
    let svd = h.thin_svd().map_err(|_| EigenError::LinearAlgebra("svd of the boundary trace matrix"))?;
    let sing = svd.S().column_vector();
    let v = svd.V();
    let b_norm = sing[0] * sing[0];
    let eig_b: Vec<f64> = (0..nb).map(|i| sing[i] * sing[i]).collect();
    let r = eig_b.iter().take_while(|&&e| e > RANGE_THRESHOLD * b_norm).count();
    let retained_min = eig_b[r - 1];
    let discarded_max = eig_b.get(r).copied().unwrap_or(0.0);
    let gap = if discarded_max > 0.0 { retained_min / discarded_max } else { f64::INFINITY };
    if gap < RANGE_GAP {
        return Err(EigenError::Conditioning {
            stage: "galerkin boundary mass range",
            detail: format!(
                "no clear gap at the rank threshold: smallest retained {retained_min:e}, largest discarded {discarded_max:e}"
            ),
        });
    }
    let qr = v.subcols(0, r).to_owned();
    let qn = v.subcols(r, nb - r).to_owned();
    let a_rr = qr.transpose() * &a * &qr;
    let inv_sqrt: Vec<f64> = (0..r).map(|i| 1.0 / sing[i]).collect();

    // Schur complement S = A_rr − A_rn A_nn⁻¹ A_nr.
    let (schur, elimination) = if nb > r {
        let a_nn = qn.transpose() * &a * &qn;
        let a_nr = qn.transpose() * &a * &qr;
        let llt = a_nn.llt(Side::Lower).map_err(|_| EigenError::Conditioning {
            stage: "galerkin bubble block",
            detail: "stiffness restricted to zero-trace fields is not positive definite".into(),
        })?;
        let x = llt.solve(&a_nr);
        (&a_rr - a_nr.transpose() * &x, Some(x))
    } else {
        (a_rr, None)
    };
    let reduced = Mat::<f64>::from_fn(r, r, |i, j| 0.5 * (schur[(i, j)] + schur[(j, i)]) * inv_sqrt[i] * inv_sqrt[j]);
    let eig = reduced
        .self_adjoint_eigen(Side::Lower)
        .map_err(|_| EigenError::LinearAlgebra("symmetric eigensolver of the reduced pencil"))?;
    let values = eig.S().column_vector();
    let y = eig.U();

    // Back-substitution: x = Q_r Σ^{-1/2} y + Q_n z, z = −A_nn⁻¹ A_nr Σ^{-1/2} y.
    let scaled = Mat::<f64>::from_fn(r, r, |i, j| inv_sqrt[i] * y[(i, j)]);
    let mut vectors = &qr * &scaled;
    if let Some(x) = &elimination {
        vectors -= &qn * (x * &scaled);
    }

    let entries: Vec<(f64, ModeTag, u64)> = (0..r)
        .map(|i| {
            (values[i], ModeTag { fourier_index: None, label: format!("galerkin:{i}"), multiplicity_hint: 1 }, i as u64)
        })
        .collect();
    let mut parameters = BTreeMap::new();
    parameters.insert("degree".into(), degree as f64);
    parameters.insert("mu".into(), mu);
    parameters.insert("basis_size".into(), nb as f64);
    parameters.insert("radial_nodes".into(), (degree + 4) as f64);
    parameters.insert("angular_nodes".into(), n_angular as f64);
    let mut diagnostics = BTreeMap::new();
    diagnostics.insert("boundary_rank".into(), r as f64);
    diagnostics.insert("range_gap".into(), gap.min(f64::MAX));
    diagnostics.insert("range_smallest_retained".into(), retained_min / b_norm);
    let spectrum = Spectrum::from_unsorted(entries, SolverKind::GalerkinPoly, parameters, diagnostics, Vec::new())?;
    Ok(GalerkinSolution { spectrum, basis, vectors })
}

//! Symbols of the Stokes Dirichlet-to-Neumann map (ψ₁, ψ₀) and of its
//! resolvent parametrix (ϖ₋₁, ϖ₋₂).

use num_complex::Complex64;

use crate::context::{origin, MuConvention, SymbolContext};
use crate::error::SymbolError;
use crate::local::Point;
use crate::matrix::{identity, real, zeros, CMatrix, SymbolFamily, SymbolMatrix, I};

/// Principal symbol `ψ₁ = 2μ|ξ′|_g I_n`.
///
/// # Errors
/// [`SymbolError::SingularSymbol`] at ξ′ = 0.
pub fn eval_psi1(ctx: &SymbolContext) -> Result<SymbolMatrix, SymbolError> {
    ctx.require_nonzero_xi("psi1")?;
    let n = ctx.dim();
    Ok(SymbolMatrix::new(identity(n) * real(2.0 * ctx.jet().mu() * ctx.xi_norm()), SymbolFamily::Psi1))
}

/// The column data `φ₁ʲ`, `j = 1…n`, from which ψ₀ is assembled.
///
/// # Errors
/// [`SymbolError::SingularSymbol`] at ξ′ = 0.
pub fn eval_phi1(ctx: &SymbolContext) -> Result<Vec<Complex64>, SymbolError> {
    ctx.require_nonzero_xi("phi1")?;
    let n = ctx.dim();
    let nn = n - 1;
    let model = ctx.model();
    let p = Point::new(&model, &origin(n));
    let xi = ctx.xi();
    let mu = ctx.jet().mu();
    let s = (mu + ctx.rho()).sqrt();
    let eta = p.eta(xi);
    let nu = p.nu(xi);
    let q1 = p.q1(xi);
    let q0 = p.q0(xi);
    let q1_dx: Vec<CMatrix> = (0..n).map(|k| p.q1_dx(xi, k)).collect();
    let q1_dxi: Vec<CMatrix> = (0..nn).map(|l| p.q1_dxi(xi, l)).collect();
    let minv = model.mu_pow(&origin(n), -1.0);
    let psi = 2.0 * mu * nu;
    let dpsi_dxi: Vec<f64> = (0..nn).map(|g| 2.0 * mu * eta[g] / nu).collect();
    let (last, q0_nn) = (n, q0[(n, n)]);

    let mut phi = vec![Complex64::new(0.0, 0.0); n];
    for (j, out) in phi.iter_mut().enumerate().take(nn) {
        let mut v = real(psi * (0..nn).map(|a| p.g[(j, a)] * minv.d1(a)).sum::<f64>());
        for g in 0..nn {
            // ∂_γ(μ⁻¹ g^{jα}) ξ_α
            let d: f64 = (0..nn).map(|a| (minv.d1(g) * p.g[(j, a)] + minv.value() * p.dg[g][(j, a)]) * xi[a]).sum();
            v -= real(dpsi_dxi[g] * d);
        }
        v -= real(mu / s) * q1[(j, last)];
        v -= I * real(2.0 * eta[j]) * q0_nn;
        for a in 0..nn {
            v -= real(p.g[(j, a)]) * q1_dx[a][(last, last)];
        }
        v += I * real((0..nn).map(|a| p.dg[nn][(j, a)] * xi[a]).sum::<f64>());
        *out = v;
    }

    let mut v = real(psi) * (real(minv.d1(nn)) + real(minv.value()) * q0_nn);
    for g in 0..nn {
        let d = real(minv.d1(g)) * q1[(last, last)] + real(minv.value()) * q1_dx[g][(last, last)];
        v -= I * real(dpsi_dxi[g]) * d;
    }
    v -= real(2.0 * mu / s) * q1[(nn, last)];
    for l in 0..n {
        v += real(3.0) * q0[(last, l)] * q1[(l, last)];
    }
    v -= real(3.0) * q1_dx[nn][(last, last)];
    v += real(6.0) * q1[(last, last)] * q0_nn;
    for g in 0..nn {
        v -= I * real(3.0) * q1_dxi[g][(last, last)] * q1_dx[g][(last, last)];
    }
    let gtr: f64 = (0..nn).map(|b| model.gamma(b, nn, b)).sum();
    v -= real(gtr) * q1[(last, last)];
    // (i/√|g|) ∂_α(√|g| g^{αβ}) ξ_β, with ∂_α log√|g| = Γ^k_{αk}.
    let mut w = 0.0;
    for a in 0..nn {
        let dlog: f64 = (0..n).map(|k| model.gamma(k, a, k)).sum();
        for b in 0..nn {
            w += (p.dg[a][(a, b)] + p.g[(a, b)] * dlog) * xi[b];
        }
    }
    v += I * real(w);
    phi[nn] = v;
    Ok(phi)
}

/// Assembles the `n×n` matrix `[−iμ ξ_k φʲ / |ξ′|²_g]` with zero last
/// column: the shared pattern by which each ψ-symbol below the principal one
/// is obtained from its φ-column. The sign is the one produced by solving
/// the symbol equation for the column; it is the sign for which the trace
/// of ϖ₋₂ and the residue theorem reproduce a positive curvature coefficient.
///
/// # Errors
/// [`SymbolError::SingularSymbol`] at ξ′ = 0;
/// [`SymbolError::DimensionMismatch`] if `phi` does not have `n` entries.
pub fn solve_psi_column(phi: &[Complex64], ctx: &SymbolContext) -> Result<SymbolMatrix, SymbolError> {
    ctx.require_nonzero_xi("psi column")?;
    let n = ctx.dim();
    if phi.len() != n {
        return Err(SymbolError::DimensionMismatch(format!("φ has {} entries, expected {n}", phi.len())));
    }
    let mu = ctx.jet().mu();
    let nu2 = ctx.xi_norm().powi(2);
    let mut m = zeros(n);
    for (j, ph) in phi.iter().enumerate() {
        for (k, x) in ctx.xi().iter().enumerate() {
            m[(j, k)] = -I * real(mu * x / nu2) * ph;
        }
    }
    Ok(SymbolMatrix::new(m, SymbolFamily::Psi0))
}

/// Degree-zero symbol ψ₀.
///
/// # Errors
/// [`SymbolError::SingularSymbol`] at ξ′ = 0.
pub fn eval_psi0(ctx: &SymbolContext) -> Result<SymbolMatrix, SymbolError> {
    solve_psi_column(&eval_phi1(ctx)?, ctx)
}

/// Level of the resolvent parametrix term: `1 ↦ ϖ₋₁`, `2 ↦ ϖ₋₂`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarpiLevel {
    One,
    Two,
}

impl VarpiLevel {
    /// `1` or `2`; anything else is unsupported.
    ///
    /// # Errors
    /// [`SymbolError::UnsupportedOrder`] for other levels.
    pub fn from_index(l: usize) -> Result<Self, SymbolError> {
        match l {
            1 => Ok(Self::One),
            2 => Ok(Self::Two),
            _ => Err(SymbolError::UnsupportedOrder { requested: l, max: 2 }),
        }
    }

    /// Largest pole order of `Tr ϖ` in `τ`.
    #[must_use]
    pub fn max_pole_order(self) -> usize {
        match self {
            Self::One => 1,
            Self::Two => 3,
        }
    }
}

/// Scalar resolvent `R = (c(ξ′) − τ)⁻¹` of the (scalar-multiple-of-identity)
/// principal symbol.
fn resolvent(ctx: &SymbolContext) -> Result<Complex64, SymbolError> {
    let tau = ctx.tau().ok_or(SymbolError::MissingSpectralParameter)?;
    let c = ctx.principal_value();
    let d = real(c) - tau;
    if d.norm() <= 1e-14 * c.max(1.0) {
        return Err(SymbolError::ResolventPole { tau, pole: c });
    }
    Ok(Complex64::new(1.0, 0.0) / d)
}

/// Parametrix terms `ϖ₋₁ = (ψ₁ − τ)⁻¹` and
/// `ϖ₋₂ = −(ψ₁−τ)⁻¹ψ₀(ψ₁−τ)⁻¹ − i(ψ₁−τ)⁻¹ Σ_α ∂_{ξ_α}ψ₁ ∂_{x_α}(ψ₁−τ)⁻¹`.
///
/// The second term of ϖ₋₂ vanishes when μ is tangentially constant (then
/// `∂_{x′}(ψ₁−τ)⁻¹ = 0` at the adapted point); it is kept, not dropped, so
/// that variable-viscosity jets are handled. Under
/// [`MuConvention::Paper`] the resolvent uses `2|ξ′|` and the term is zero.
///
/// # Errors
/// [`SymbolError::MissingSpectralParameter`], [`SymbolError::ResolventPole`],
/// [`SymbolError::SingularSymbol`].
pub fn eval_varpi(level: VarpiLevel, ctx: &SymbolContext) -> Result<SymbolMatrix, SymbolError> {
    ctx.require_nonzero_xi("varpi")?;
    let n = ctx.dim();
    let r = resolvent(ctx)?;
    match level {
        VarpiLevel::One => Ok(SymbolMatrix::new(identity(n) * r, SymbolFamily::VarpiMinus1)),
        VarpiLevel::Two => {
            let psi0 = eval_psi0(ctx)?;
            let mut m = -(psi0.matrix * (r * r));
            if ctx.mu_convention() == MuConvention::Carried {
                let nn = n - 1;
                let mu = ctx.jet().mu();
                let grad = ctx.jet().grad_mu();
                let nu = ctx.xi_norm();
                // ∂_ξ ψ₁ = 2μ ξ/|ξ|, ∂_x ψ₁ = 2 ∂μ |ξ|, ∂_x R = −R² ∂_x ψ₁.
                let s: f64 = (0..nn).map(|a| (2.0 * mu * ctx.xi()[a] / nu) * (2.0 * grad[a] * nu)).sum();
                m += identity(n) * (I * r * r * r * real(s));
            }
            Ok(SymbolMatrix::new(m, SymbolFamily::VarpiMinus2))
        }
    }
}

/// `Tr ϖ₋₁` or `Tr ϖ₋₂`.
///
/// # Errors
/// As [`eval_varpi`].
pub fn trace_varpi(level: VarpiLevel, ctx: &SymbolContext) -> Result<Complex64, SymbolError> {
    Ok(eval_varpi(level, ctx)?.trace())
}

/// Coefficients `N_k(ξ′)` of `Tr ϖ = Σ_k N_k (c − τ)^{−k}`, `k = 1…K`, found by
/// evaluating the trace at `K` spectral parameters and solving the
/// Vandermonde system in `R = (c − τ)⁻¹`. The trace is exactly such a
/// polynomial in R at the adapted point, so this is exact up to rounding.
///
/// # Errors
/// As [`eval_varpi`] (τ in `ctx` is ignored).
pub fn pole_coefficients(level: VarpiLevel, ctx: &SymbolContext) -> Result<Vec<Complex64>, SymbolError> {
    ctx.require_nonzero_xi("varpi")?;
    let c = ctx.principal_value();
    let k_max = level.max_pole_order();
    let rs: Vec<f64> = (1..=k_max).map(|i| i as f64 / c).collect();
    let mut vander = CMatrix::zeros(k_max, k_max);
    let mut rhs = nalgebra::DVector::<Complex64>::zeros(k_max);
    for (i, r) in rs.iter().enumerate() {
        let tau = real(c - 1.0 / r);
        rhs[i] = trace_varpi(level, &ctx.clone().with_tau(tau))?;
        for k in 0..k_max {
            vander[(i, k)] = real(r.powi(k as i32 + 1));
        }
    }
    let sol = vander.lu().solve(&rhs).ok_or_else(|| SymbolError::InvalidParameter("singular pole system".into()))?;
    Ok(sol.iter().copied().collect())
}

/// Closed form of `Tr ϖ₋₂` for a tangentially constant viscosity, derived
/// from the symbol chain at the adapted point:
///
/// `Tr ϖ₋₂ = μ [Σκ + ½ Σκ_α ξ_α²/|ξ′|² − ½ U_{αβ}ξ_αξ_β/|ξ′|²] (c − τ)^{−2}`,
///
/// with `U = ∂g^{αβ}/∂xₙ` under the context's index convention. Under
/// [`crate::IndexConvention::MetricInverse`] (`U = −2κ`) this equals both
/// `[−(μ/2)ΣU_{αα} − (3μ/4)U_{αβ}ξ_αξ_β/|ξ′|²](c − τ)^{−2}` and
/// `μ[Σκ + (3/2) Σκ_α ξ_α²/|ξ′|²](c − τ)^{−2}`.
///
/// # Errors
/// As [`eval_varpi`].
pub fn trace_varpi2_closed_form(ctx: &SymbolContext) -> Result<Complex64, SymbolError> {
    ctx.require_nonzero_xi("varpi")?;
    let r = resolvent(ctx)?;
    let jet = ctx.jet();
    let nt = jet.dim() - 1;
    let xi = ctx.xi();
    let nu2 = ctx.xi_norm().powi(2);
    let sign = ctx.index_convention().sign();
    let sum_k: f64 = jet.kappa().iter().sum();
    let k_xi: f64 = (0..nt).map(|a| jet.kappa()[a] * xi[a] * xi[a]).sum::<f64>() / nu2;
    let mut u_xi = 0.0;
    for a in 0..nt {
        for b in 0..nt {
            u_xi += sign * jet.dg_lower_dn(a, b) * xi[a] * xi[b];
        }
    }
    u_xi /= nu2;
    Ok(real(jet.mu() * (sum_k + 0.5 * k_xi - 0.5 * u_xi)) * r * r)
}

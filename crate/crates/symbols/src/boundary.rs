//! Symbols of the factorised boundary system: the coefficient symbols b, c,
//! the factor q (q₁, q₀, q₋₁) and the auxiliary matrices A₁, A₂, E₁, E₀.
//!
//! Every function evaluates at the adapted point `x₀` of the context's jet.
//! `x`-derivatives of q₁ are analytic within the local model of the jet;
//! those of q₀ (needed only for E₀) are Richardson-extrapolated central
//! differences.

use crate::context::{origin, SymbolContext};
use crate::error::SymbolError;
use crate::local::Point;
use crate::matrix::{real, richardson, CMatrix, SymbolFamily, SymbolMatrix, I};

/// The coefficient symbols `b = b₁ + b₀` and `c = c₂ + c₁ + c₀`.
#[derive(Debug, Clone, PartialEq)]
pub struct BcSymbols {
    pub b1: SymbolMatrix,
    pub b0: SymbolMatrix,
    pub c2: SymbolMatrix,
    pub c1: SymbolMatrix,
    pub c0: SymbolMatrix,
}

/// Evaluates b₁, b₀, c₂, c₁, c₀ at the adapted point. These are polynomial
/// in ξ′, so ξ′ = 0 is allowed.
///
/// # Errors
/// None at present; the `Result` leaves room for jet validation.
pub fn eval_bc(ctx: &SymbolContext) -> Result<BcSymbols, SymbolError> {
    let model = ctx.model();
    let p = Point::new(&model, &origin(ctx.dim()));
    let xi = ctx.xi();
    Ok(BcSymbols {
        b1: SymbolMatrix::new(p.b1(xi), SymbolFamily::B1),
        b0: SymbolMatrix::new(p.b0(), SymbolFamily::B0),
        c2: SymbolMatrix::new(p.c2(xi), SymbolFamily::C2),
        c1: SymbolMatrix::new(p.c1(xi), SymbolFamily::C1),
        c0: SymbolMatrix::new(p.c0(), SymbolFamily::C0),
    })
}

/// Principal symbol q₁ of the factor Q.
///
/// # Errors
/// [`SymbolError::SingularSymbol`] at ξ′ = 0.
pub fn eval_q1(ctx: &SymbolContext) -> Result<SymbolMatrix, SymbolError> {
    ctx.require_nonzero_xi("q1")?;
    let model = ctx.model();
    let p = Point::new(&model, &origin(ctx.dim()));
    Ok(SymbolMatrix::new(p.q1(ctx.xi()), SymbolFamily::Q1))
}

/// The matrices A₁ and A₂ of the q₀ recursion. A₂ carries the last-column
/// data of q₁'s correction (`q₁ = |ξ′|I + μ⁻¹(μ+ρ)^{1/2} A₂`); A₁ differs
/// only in the sign of the `Γ^j_{βn}` term.
///
/// # Errors
/// [`SymbolError::SingularSymbol`] at ξ′ = 0.
pub fn eval_a1a2(ctx: &SymbolContext) -> Result<(SymbolMatrix, SymbolMatrix), SymbolError> {
    ctx.require_nonzero_xi("A1/A2")?;
    let model = ctx.model();
    let p = Point::new(&model, &origin(ctx.dim()));
    Ok((SymbolMatrix::new(p.a1(ctx.xi()), SymbolFamily::A1), SymbolMatrix::new(p.a2(ctx.xi()), SymbolFamily::A2)))
}

/// The degree-one remainder E₁ whose image under the X-map is q₀.
///
/// # Errors
/// [`SymbolError::SingularSymbol`] at ξ′ = 0.
pub fn eval_e1(ctx: &SymbolContext) -> Result<SymbolMatrix, SymbolError> {
    ctx.require_nonzero_xi("E1")?;
    let model = ctx.model();
    let p = Point::new(&model, &origin(ctx.dim()));
    Ok(SymbolMatrix::new(p.e1(ctx.xi()), SymbolFamily::E1))
}

/// Degree-zero symbol q₀ = X(E₁).
///
/// # Errors
/// [`SymbolError::SingularSymbol`] at ξ′ = 0.
pub fn eval_q0(ctx: &SymbolContext) -> Result<SymbolMatrix, SymbolError> {
    ctx.require_nonzero_xi("q0")?;
    let model = ctx.model();
    let p = Point::new(&model, &origin(ctx.dim()));
    Ok(SymbolMatrix::new(p.q0(ctx.xi()), SymbolFamily::Q0))
}

/// Applies the X-map at the adapted point to an arbitrary `(n+1)×(n+1)`
/// matrix `e`.
///
/// # Errors
/// [`SymbolError::SingularSymbol`] at ξ′ = 0;
/// [`SymbolError::DimensionMismatch`] for a wrongly sized `e`.
pub fn apply_x_map(ctx: &SymbolContext, e: &CMatrix) -> Result<CMatrix, SymbolError> {
    ctx.require_nonzero_xi("X-map")?;
    let size = ctx.dim() + 1;
    if e.shape() != (size, size) {
        return Err(SymbolError::DimensionMismatch(format!("X-map needs a {size}×{size} matrix, got {:?}", e.shape())));
    }
    let model = ctx.model();
    let p = Point::new(&model, &origin(ctx.dim()));
    Ok(p.x_map(ctx.xi(), e))
}

/// E₀ and q₋₁ = X(E₀).
///
/// `E₀ = −q₀² + iΣ(∂_ξq₁∂_xq₀ + ∂_ξq₀∂_xq₁) + ½Σ∂²_ξq₁∂²_xq₁ + b₀q₀
///  − iΣ∂_ξb₁∂_xq₀ + ∂_{xₙ}q₀ − c₀`, sums over tangential indices.
///
/// # Errors
/// [`SymbolError::SingularSymbol`] at ξ′ = 0.
pub fn eval_e0_qm1(ctx: &SymbolContext) -> Result<(SymbolMatrix, SymbolMatrix), SymbolError> {
    ctx.require_nonzero_xi("E0/q-1")?;
    let n = ctx.dim();
    let nn = n - 1;
    let model = ctx.model();
    let x0 = origin(n);
    let p = Point::new(&model, &x0);
    let xi = ctx.xi();
    let steps = ctx.steps();
    let hx = steps.x_relative * model.length_scale();
    let hxi = steps.xi_relative * ctx.xi_norm();

    let q0_at = |x: &[f64], xi: &[f64]| Point::new(&model, x).q0(xi);
    let dq0_dx = |k: usize| {
        richardson(
            |h| {
                let mut x = x0.clone();
                x[k] += h;
                q0_at(&x, xi)
            },
            hx,
        )
    };
    let dq0_dxi = |l: usize| {
        richardson(
            |h| {
                let mut z = xi.to_vec();
                z[l] += h;
                q0_at(&x0, &z)
            },
            hxi,
        )
    };

    let q0 = p.q0(xi);
    let mut e = -(&q0 * &q0) + p.b0() * &q0 + dq0_dx(nn) - p.c0();
    for l in 0..nn {
        let dxq0 = dq0_dx(l);
        let term = p.q1_dxi(xi, l) * &dxq0 + dq0_dxi(l) * p.q1_dx(xi, l) - p.b1_dxi(l) * &dxq0;
        e += term * I;
        for r in 0..nn {
            e += p.q1_dxi2(xi, l, r) * p.q1_dx2_tangential(xi, l, r) * real(0.5);
        }
    }
    let qm1 = p.x_map(xi, &e);
    Ok((SymbolMatrix::new(e, SymbolFamily::E0), SymbolMatrix::new(qm1, SymbolFamily::QMinus1)))
}

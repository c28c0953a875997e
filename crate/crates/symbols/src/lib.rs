//! Boundary symbols of the Stokes Dirichlet-to-Neumann map with variable
//! viscosity, and the heat-trace coefficients they produce.
//!
//! Everything is evaluated at a single boundary point in boundary normal
//! coordinates `(x₁, …, x_{n−1}, xₙ)` (zero-based in the API, normal index
//! `n − 1`), where the metric is the identity and its tangential derivatives
//! vanish. The chain is:
//!
//! 1. the Stokes system, rearranged as a first-order factorisation, yields
//!    the boundary-condition symbols `b₁, b₀, c₂, c₁, c₀` ([`eval_bc`]);
//! 2. the factor symbols `q₁, q₀, q₋₁` ([`eval_q1`], [`eval_q0`],
//!    [`eval_e0_qm1`]);
//! 3. the DtN symbols `ψ₁, ψ₀` ([`eval_psi1`], [`eval_psi0`]);
//! 4. the resolvent symbols `ϖ₋₁, ϖ₋₂` of `ψ − τ` and their traces
//!    ([`trace_varpi`]);
//! 5. contour integration in τ ([`residue_heat_factor`]) and radial
//!    integration in ξ′ ([`radial_integral`]) give the pointwise heat
//!    densities ([`a0_density`], [`a1_density`]), which are integrated over
//!    the boundary ([`assemble_coefficient`]).
//!
//! Two conventions are switchable: whether the viscosity factor of the
//! principal DtN symbol is carried into the resolvent ([`MuConvention`]),
//! and the sign of the normal derivative of the inverse metric
//! ([`IndexConvention`]).

// The symbol formulas are transcribed as index loops over tensor components;
// iterator rewrites would obscure the correspondence with the index notation.
#![allow(clippy::needless_range_loop)]

mod boundary;
mod coefficients;
mod compose;
mod context;
mod dtn;
mod error;
mod local;
mod matrix;
mod radial;
mod residue;

pub use boundary::{apply_x_map, eval_a1a2, eval_bc, eval_e0_qm1, eval_e1, eval_q0, eval_q1, BcSymbols};
pub use coefficients::{
    a0_density, a1_density, a1_density_with_index, assemble_coefficient, assemble_coefficient_numeric, numeric_density,
    Coefficient, PipelineOptions,
};
pub use compose::{compose, AsymptoticSymbol, HomogeneousTerm, SymbolEvaluator, MAX_COMPOSITION_ORDER};
pub use context::{DerivativeSteps, IndexConvention, MuConvention, SymbolContext};
pub use dtn::{
    eval_phi1, eval_psi0, eval_psi1, eval_varpi, pole_coefficients, solve_psi_column, trace_varpi,
    trace_varpi2_closed_form, VarpiLevel,
};
pub use error::SymbolError;
pub use matrix::{CMatrix, SymbolFamily, SymbolMatrix};
pub use radial::{radial_integral, sphere_volume};
pub use residue::{contour_heat_factor, residue_heat_factor, ContourOptions};

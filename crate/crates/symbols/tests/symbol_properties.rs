//! Structural invariants of the symbol chain over randomly drawn jets:
//! homogeneity, independence of the auxiliary parameter ρ, flat-space
//! nullity and positivity of the principal DtN symbol.

use num_complex::Complex64;
use proptest::prelude::*;
use stokes_geometry::BoundaryJet;
use stokes_symbols::{
    eval_bc, eval_e0_qm1, eval_e1, eval_phi1, eval_psi0, eval_psi1, eval_q0, eval_q1, eval_varpi, trace_varpi, CMatrix,
    MuConvention, SymbolContext, VarpiLevel,
};

const SCALES: [f64; 3] = [2.0, 3.0, 10.0];

fn jet_strategy() -> impl Strategy<Value = BoundaryJet> {
    (
        1usize..=2,
        prop::collection::vec(-2.0f64..2.0, 2),
        0.3f64..3.0,
        -1.0f64..1.0,
        prop::collection::vec(-0.5f64..0.5, 2),
    )
        .prop_map(|(nt, kappa, mu, dn, dt)| BoundaryJet::adapted(&kappa[..nt], mu, dn, &dt[..nt]).unwrap())
}

fn xi_strategy() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(prop_oneof![-2.0f64..-0.3, 0.3f64..2.0], 2)
}

fn context(jet: &BoundaryJet, xi: &[f64], rho: f64) -> SymbolContext {
    let nt = jet.dim() - 1;
    SymbolContext::new(jet.clone(), rho, &xi[..nt]).unwrap()
}

/// Componentwise `|a − b| ≤ tol · max|b|`.
fn close(a: &CMatrix, b: &CMatrix, tol: f64) -> Result<(), TestCaseError> {
    let scale = b.iter().map(|v| v.norm()).fold(f64::MIN_POSITIVE, f64::max);
    for (x, y) in a.iter().zip(b.iter()) {
        prop_assert!((x - y).norm() <= tol * scale, "{} vs {} (scale {scale})", x, y);
    }
    Ok(())
}

fn scaled(ctx: &SymbolContext, s: f64) -> SymbolContext {
    let xi: Vec<f64> = ctx.xi().iter().map(|v| v * s).collect();
    let tau = ctx.tau().map(|t| t * s);
    let out = ctx.clone().with_xi(&xi);
    match tau {
        Some(t) => out.with_tau(t),
        None => out,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn boundary_symbols_are_homogeneous(jet in jet_strategy(), xi in xi_strategy(), rho in 0.0f64..5.0) {
        let ctx = context(&jet, &xi, rho);
        let bc = eval_bc(&ctx).unwrap();
        for s in SCALES {
            let bs = eval_bc(&scaled(&ctx, s)).unwrap();
            close(&bs.b1.matrix, &(&bc.b1.matrix * Complex64::from(s)), 1e-10)?;
            close(&bs.b0.matrix, &bc.b0.matrix, 1e-10)?;
            close(&bs.c2.matrix, &(&bc.c2.matrix * Complex64::from(s * s)), 1e-10)?;
            close(&bs.c1.matrix, &(&bc.c1.matrix * Complex64::from(s)), 1e-10)?;
            close(&bs.c0.matrix, &bc.c0.matrix, 1e-10)?;
        }
    }

    #[test]
    fn factor_symbols_are_homogeneous(jet in jet_strategy(), xi in xi_strategy(), rho in 0.0f64..5.0) {
        let ctx = context(&jet, &xi, rho);
        let q1 = eval_q1(&ctx).unwrap().matrix;
        let e1 = eval_e1(&ctx).unwrap().matrix;
        let q0 = eval_q0(&ctx).unwrap().matrix;
        let (e0, qm1) = eval_e0_qm1(&ctx).unwrap();
        for s in SCALES {
            let c = scaled(&ctx, s);
            close(&eval_q1(&c).unwrap().matrix, &(&q1 * Complex64::from(s)), 1e-10)?;
            close(&eval_e1(&c).unwrap().matrix, &(&e1 * Complex64::from(s)), 1e-10)?;
            close(&eval_q0(&c).unwrap().matrix, &q0, 1e-10)?;
            let (e0s, qm1s) = eval_e0_qm1(&c).unwrap();
            close(&e0s.matrix, &e0.matrix, 1e-10)?;
            close(&qm1s.matrix, &(&qm1.matrix / Complex64::from(s)), 1e-10)?;
        }
    }

    #[test]
    fn dtn_symbols_are_homogeneous(jet in jet_strategy(), xi in xi_strategy(), rho in 0.0f64..5.0) {
        let ctx = context(&jet, &xi, rho);
        let psi1 = eval_psi1(&ctx).unwrap().matrix;
        let psi0 = eval_psi0(&ctx).unwrap().matrix;
        for s in SCALES {
            let c = scaled(&ctx, s);
            close(&eval_psi1(&c).unwrap().matrix, &(&psi1 * Complex64::from(s)), 1e-10)?;
            close(&eval_psi0(&c).unwrap().matrix, &psi0, 1e-10)?;
        }
    }

    #[test]
    fn resolvent_symbols_scale_jointly(
        jet in jet_strategy(), xi in xi_strategy(), tr in -3.0f64..3.0, ti in 0.1f64..3.0,
        paper in any::<bool>(),
    ) {
        let conv = if paper { MuConvention::Paper } else { MuConvention::Carried };
        let ctx = context(&jet, &xi, 0.0).with_tau(Complex64::new(tr, ti)).with_mu_convention(conv);
        let w1 = eval_varpi(VarpiLevel::One, &ctx).unwrap().matrix;
        let w2 = eval_varpi(VarpiLevel::Two, &ctx).unwrap().matrix;
        for s in SCALES {
            let c = scaled(&ctx, s);
            close(&eval_varpi(VarpiLevel::One, &c).unwrap().matrix, &(&w1 / Complex64::from(s)), 1e-10)?;
            close(&eval_varpi(VarpiLevel::Two, &c).unwrap().matrix, &(&w2 / Complex64::from(s * s)), 1e-10)?;
        }
    }

    #[test]
    fn second_trace_is_independent_of_rho(
        jet in jet_strategy(), xi in xi_strategy(), tr in -3.0f64..3.0, ti in 0.1f64..3.0,
    ) {
        let tau = Complex64::new(tr, ti);
        let base = trace_varpi(VarpiLevel::Two, &context(&jet, &xi, 0.0).with_tau(tau)).unwrap();
        for rho in [1.0, 10.0] {
            let t = trace_varpi(VarpiLevel::Two, &context(&jet, &xi, rho).with_tau(tau)).unwrap();
            prop_assert!((t - base).norm() <= 1e-10 * base.norm().max(1e-300), "{t} vs {base}");
        }
    }

    #[test]
    fn flat_space_nullity(n in 2usize..=3, mu in 0.3f64..3.0, xi in xi_strategy(), rho in 0.0f64..5.0, ti in 0.1f64..2.0) {
        let jet = BoundaryJet::flat(n, mu).unwrap();
        let ctx = context(&jet, &xi, rho).with_tau(Complex64::new(0.0, ti));
        prop_assert_eq!(eval_q0(&ctx).unwrap().entry(n, n), Complex64::new(0.0, 0.0));
        prop_assert_eq!(eval_e0_qm1(&ctx).unwrap().1.max_abs(), 0.0);
        prop_assert!(eval_phi1(&ctx).unwrap().iter().all(|v| v.norm() == 0.0));
        prop_assert_eq!(eval_psi0(&ctx).unwrap().max_abs(), 0.0);
        prop_assert_eq!(trace_varpi(VarpiLevel::Two, &ctx).unwrap(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn principal_dtn_symbol_is_positive_definite(jet in jet_strategy(), xi in xi_strategy()) {
        let ctx = context(&jet, &xi, 0.0);
        let psi1 = eval_psi1(&ctx).unwrap().matrix;
        let expect = 2.0 * jet.mu() * ctx.xi_norm();
        let eig = psi1.map(|v| v.re).symmetric_eigen().eigenvalues;
        prop_assert!(psi1.iter().all(|v| v.im == 0.0));
        for e in eig.iter() {
            prop_assert!(*e > 0.0);
            prop_assert!((e - expect).abs() <= 1e-14 * expect);
        }
    }
}

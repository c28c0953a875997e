//! Heat traces, two-term fits and geometric inversion.

use std::f64::consts::{PI, TAU};

use approx::assert_relative_eq;
use proptest::prelude::*;
use stokes_eigensolver::disk_spectrum_with_count;
use stokes_geometry::{perimeter, total_weighted_curvature, PlanarDomain, ViscositySpec};
use stokes_heattrace::{
    fit_two_term, invert_geometry, log_grid, partial_trace, FitOptions, FitReport, HeatTraceError, HeatTraceFit,
    HeatTraceSample, TraceOptions,
};
use stokes_symbols::{assemble_coefficient, Coefficient, MuConvention};

fn synthetic(f: impl Fn(f64) -> f64, grid: &[f64]) -> Vec<HeatTraceSample> {
    grid.iter().map(|&t| HeatTraceSample { t, value: f(t), tail_bound: 0.0, k_used: 0, usable: true }).collect()
}

fn fit_with(a0: f64, a1: f64, n: usize) -> HeatTraceFit {
    let grid = log_grid(0.02, 0.2, 12).unwrap();
    let s = synthetic(|t| a0 * t.powi(1 - n as i32) + a1 * t.powi(2 - n as i32), &grid);
    fit_two_term(&s, &FitOptions { n, include_tlogt: false }).unwrap()
}

#[test]
fn finite_spectra() {
    let t = [0.1, 1.0, 7.0];
    for s in partial_trace(&[0.0, 0.0, 0.0], &t, &TraceOptions::default()).unwrap() {
        assert_eq!(s.value, 3.0);
    }
    let t0 = 0.3;
    let single = partial_trace(&[2f64.ln() / t0], &[t0], &TraceOptions::default()).unwrap();
    assert_relative_eq!(single[0].value, 0.5, max_relative = 1e-15);
    let pair = partial_trace(&[0.0, 2f64.ln() / t0], &[t0], &TraceOptions::default()).unwrap();
    assert_relative_eq!(pair[0].value, 1.5, max_relative = 1e-15);
    // A list too short for a tail model is never silently accepted.
    assert!(!single[0].usable);
}

#[test]
fn truncated_disk_trace_lies_within_its_tail_bound_of_a_larger_oracle() {
    let oracle = disk_spectrum_with_count(1.0, 1.0, 4000).unwrap();
    let t = [0.05];
    let reference = partial_trace(&oracle.eigenvalues, &t, &TraceOptions::default()).unwrap()[0];
    for k in [400, 800, 1600] {
        let s = disk_spectrum_with_count(1.0, 1.0, k).unwrap();
        let value = partial_trace(&s.eigenvalues, &t, &TraceOptions::default()).unwrap()[0];
        let missing = reference.value - value.value;
        // Differences below the rounding level of the sums are noise.
        let noise = 1e-13 * reference.value;
        assert!(missing >= -noise);
        assert!(missing <= value.tail_bound + noise, "K={k}: missing {missing:e} > bound {:e}", value.tail_bound);
        if missing > 1e3 * noise {
            // The geometric model is not wildly pessimistic either.
            assert!(value.tail_bound <= 10.0 * missing);
        }
    }
    // Closed form 3 + 2e^{−2t} coth t of the complete spectrum.
    let exact = 3.0 + 2.0 * (-0.1f64).exp() / 0.05f64.tanh();
    assert_relative_eq!(reference.value, exact, max_relative = 1e-13);
}

#[test]
fn tail_flags_unusable_samples() {
    let s = disk_spectrum_with_count(1.0, 1.0, 400).unwrap();
    // λ_400 ≈ 200: e^{−200t} is far from negligible at t = 0.05 but is at
    // t = 0.5.
    let samples = partial_trace(&s.eigenvalues, &[0.05, 0.5], &TraceOptions::default()).unwrap();
    assert!(!samples[0].usable);
    assert!(samples[1].usable);
}

#[test]
fn exact_two_term_recovery() {
    let f = fit_with(2.0, 2.5, 2);
    assert!((f.a0_hat - 2.0).abs() <= 1e-12 && (f.a1_hat - 2.5).abs() <= 1e-12, "{f:?}");
    assert!(f.residual < 1e-12);
    let f3 = fit_with(0.7, -0.3, 3);
    assert!((f3.a0_hat - 0.7).abs() <= 1e-12 && (f3.a1_hat + 0.3).abs() <= 1e-12);
}

#[test]
fn recovery_with_tlogt_remainder() {
    let grid = log_grid(0.02, 0.2, 12).unwrap();
    let s = synthetic(|t| 2.0 / t + 2.5 + 0.3 * t * t.ln(), &grid);
    let f = fit_two_term(&s, &FitOptions { n: 2, include_tlogt: true }).unwrap();
    assert!((f.a0_hat - 2.0).abs() <= 1e-10 && (f.a1_hat - 2.5).abs() <= 1e-10, "{f:?}");
    assert!((f.tlogt.unwrap() - 0.3).abs() <= 1e-9);
}

#[test]
fn fit_errors() {
    let narrow = synthetic(|t| 1.0 / t, &log_grid(0.1, 0.3, 6).unwrap());
    assert!(matches!(
        fit_two_term(&narrow, &FitOptions { n: 2, include_tlogt: false }),
        Err(HeatTraceError::InsufficientSamples(_))
    ));
    let two = synthetic(|t| 1.0 / t, &[0.01, 0.2]);
    assert!(matches!(
        fit_two_term(&two, &FitOptions { n: 2, include_tlogt: false }),
        Err(HeatTraceError::InsufficientSamples(_))
    ));
    // Nearly coincident clusters at the two ends make 1/t, 1 and t log t
    // almost dependent once t log t ≈ linear in the basis: the check fires.
    let clustered = synthetic(|t| 1.0 / t, &[0.1, 0.1 + 1e-9, 0.1 + 2e-9, 0.5]);
    assert!(matches!(
        fit_two_term(&clustered, &FitOptions { n: 2, include_tlogt: true }),
        Err(HeatTraceError::IllConditioned { .. })
    ));
    let s = synthetic(|t| 1.0 / t, &log_grid(0.02, 0.2, 5).unwrap());
    assert!(fit_two_term(&s, &FitOptions { n: 3, include_tlogt: true }).is_err());
    assert!(log_grid(0.2, 0.1, 4).is_err());
    assert!(partial_trace(&[1.0, 0.5], &[0.1], &TraceOptions::default()).is_err());
    assert!(partial_trace(&[1.0], &[0.0], &TraceOptions::default()).is_err());
}

#[test]
fn inversion_examples() {
    let g = invert_geometry(&fit_with(2.0, 2.5, 2), 1.0, MuConvention::Paper).unwrap();
    assert_relative_eq!(g.perimeter, TAU, max_relative = 1e-11);
    assert_relative_eq!(g.weighted_curvature, TAU, max_relative = 1e-11);
    let g4 = invert_geometry(&fit_with(4.0, 2.5, 2), 1.0, MuConvention::Carried).unwrap();
    assert_relative_eq!(g4.perimeter, 4.0 * PI, max_relative = 1e-11);
    let bad = fit_with(-1.0, 2.5, 2);
    assert!(matches!(invert_geometry(&bad, 1.0, MuConvention::Paper), Err(HeatTraceError::Inversion(_))));
    let report = FitReport::new(&fit_with(2.0, 2.5, 2), &g);
    let json = serde_json::to_value(&report).unwrap();
    for key in ["a0_hat", "a1_hat", "residual", "perimeter_est", "curvature_est", "convention", "diagnostics"] {
        assert!(json.get(key).is_some(), "missing {key}");
    }
    assert_eq!(json["convention"], "paper");
}

#[test]
fn inversion_undoes_symbol_side_assembly() {
    let domains = [
        PlanarDomain::circle(1.0, [0.0, 0.0]),
        PlanarDomain::ellipse(2.0, 1.0),
        PlanarDomain::cosine_star(1.0, 0.2, 3),
    ];
    for d in &domains {
        for mu in [1.0, 2.5] {
            for conv in [MuConvention::Paper, MuConvention::Carried] {
                let visc = ViscositySpec::Constant(mu);
                let a0 = assemble_coefficient(d, &visc, Coefficient::A0, conv, 512).unwrap();
                let a1 = assemble_coefficient(d, &visc, Coefficient::A1, conv, 512).unwrap();
                let g = invert_geometry(&fit_with(a0, a1, 2), mu, conv).unwrap();
                let weight = match conv {
                    MuConvention::Paper => 1,
                    MuConvention::Carried => 0,
                };
                assert_relative_eq!(g.perimeter, perimeter(d, 512), max_relative = 1e-10);
                let oracle = total_weighted_curvature(d, &visc, weight, 512).unwrap();
                assert_relative_eq!(g.weighted_curvature, oracle, max_relative = 1e-10);
                assert_relative_eq!(g.total_curvature, TAU, max_relative = 1e-10);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn trace_is_monotone_and_convex(
        raw in prop::collection::vec(0.0f64..200.0, 5..80),
        t0 in 0.01f64..1.0,
        dt in 0.001f64..0.1,
    ) {
        let mut l = raw.clone();
        l.sort_by(f64::total_cmp);
        let grid = [t0, t0 + dt, t0 + 2.0 * dt];
        let s = partial_trace(&l, &grid, &TraceOptions::default()).unwrap();
        prop_assert!(s[0].value >= s[1].value && s[1].value >= s[2].value);
        prop_assert!(s[0].value + s[2].value - 2.0 * s[1].value >= -1e-12 * s[0].value);
    }

    #[test]
    fn exact_linear_recovery(a0 in 0.1f64..10.0, a1 in -5.0f64..5.0) {
        let f = fit_with(a0, a1, 2);
        prop_assert!((f.a0_hat - a0).abs() <= 1e-12 * a0.max(1.0));
        prop_assert!((f.a1_hat - a1).abs() <= 1e-11 * a0.max(1.0));
    }
}

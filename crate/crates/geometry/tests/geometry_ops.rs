//! Boundary-geometry operations checked against closed forms and
//! independent quadrature oracles.

use std::f64::consts::{PI, TAU};

use approx::assert_relative_eq;
use num_complex::Complex64;
use proptest::prelude::*;
use stokes_geometry::{
    curve_jet, perimeter, total_weighted_curvature, DomainTransform, PlanarDomain, ValidationOptions, ViscositySpec,
};

const NQ: usize = 512;

/// Adaptive Gauss–Legendre (5-point, bisection) oracle, independent of the
/// trapezoid rule used by the library.
fn adaptive_gauss(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    const X: [f64; 5] =
        [0.0, 0.538_469_310_105_683_1, -0.538_469_310_105_683_1, 0.906_179_845_938_664, -0.906_179_845_938_664];
    const W: [f64; 5] = [
        0.568_888_888_888_888_9,
        0.478_628_670_499_366_5,
        0.478_628_670_499_366_5,
        0.236_926_885_056_189_1,
        0.236_926_885_056_189_1,
    ];
    let rule = |a: f64, b: f64| {
        let (m, h) = (0.5 * (a + b), 0.5 * (b - a));
        X.iter().zip(W).map(|(x, w)| w * f(m + h * x)).sum::<f64>() * h
    };
    fn rec(rule: &dyn Fn(f64, f64) -> f64, a: f64, b: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let (l, r) = (rule(a, m), rule(m, b));
        if depth > 40 || (l + r - whole).abs() < tol {
            l + r
        } else {
            rec(rule, a, m, l, 0.5 * tol, depth + 1) + rec(rule, m, b, r, 0.5 * tol, depth + 1)
        }
    }
    rec(&rule, a, b, rule(a, b), tol, 0)
}

#[test]
fn unit_circle_jet() {
    let d = PlanarDomain::circle(1.0, [0.0, 0.0]);
    for s in [0.0, 0.3, 2.0, 5.5] {
        let jet = curve_jet(&d, &ViscositySpec::Constant(1.0), s).unwrap();
        assert_relative_eq!(jet.kappa()[0], 1.0, epsilon = 1e-14);
        assert_eq!(jet.inverse_metric(0, 0), 1.0);
        assert_relative_eq!(jet.dg_lower_dn(0, 0), 2.0, epsilon = 1e-14);
        assert_eq!(jet.dim(), 2);
    }
}

#[test]
fn circle_curvature_scales_inversely_with_radius() {
    for r in [0.5, 2.0, 7.0] {
        let d = PlanarDomain::circle(r, [1.0, 2.0]);
        let jet = curve_jet(&d, &ViscositySpec::Constant(1.0), 1.1).unwrap();
        assert_relative_eq!(jet.kappa()[0], 1.0 / r, max_relative = 1e-13);
    }
}

#[test]
fn ellipse_vertex_curvature_matches_tangent_angle_oracle() {
    let d = PlanarDomain::ellipse(2.0, 1.0);
    let jet = curve_jet(&d, &ViscositySpec::Constant(1.0), 0.0).unwrap();
    // Oracle: κ = dθ/dℓ with θ the tangent angle of (2cos s, sin s),
    // by central differences of the analytic tangent.
    let angle = |s: f64| (s.cos()).atan2(-2.0 * s.sin());
    let speed = |s: f64| (4.0 * s.sin().powi(2) + s.cos().powi(2)).sqrt();
    let h = 1e-4;
    let oracle = (angle(h) - angle(-h)) / (2.0 * h) / speed(0.0);
    assert_relative_eq!(oracle, 2.0, max_relative = 1e-7);
    assert_relative_eq!(jet.kappa()[0], 2.0, max_relative = 1e-13);
    assert_relative_eq!(jet.kappa()[0], oracle, max_relative = 1e-7);
}

#[test]
fn perimeters() {
    assert_relative_eq!(perimeter(&PlanarDomain::circle(1.0, [0.0, 0.0]), NQ), TAU, max_relative = 1e-14);
    assert_relative_eq!(perimeter(&PlanarDomain::circle(3.0, [0.5, 0.0]), NQ), 6.0 * PI, max_relative = 1e-14);
    let oracle = adaptive_gauss(&|s: f64| (4.0 * s.sin().powi(2) + s.cos().powi(2)).sqrt(), 0.0, TAU, 1e-14);
    let got = perimeter(&PlanarDomain::ellipse(2.0, 1.0), NQ);
    assert!((got - oracle).abs() <= 1e-10, "{got} vs {oracle}");
}

#[test]
fn weighted_curvatures() {
    let one = ViscositySpec::Constant(1.0);
    let circle = PlanarDomain::circle(1.0, [0.0, 0.0]);
    assert_relative_eq!(total_weighted_curvature(&circle, &one, 1, NQ).unwrap(), TAU, max_relative = 1e-13);
    let ellipse = PlanarDomain::ellipse(2.0, 1.0);
    assert_relative_eq!(total_weighted_curvature(&ellipse, &one, 1, NQ).unwrap(), TAU, max_relative = 1e-12);

    // μ(s) = 2 + cos s on the unit circle: oracle ∮(2 + cos s) ds by
    // brute-force midpoint quadrature.
    let visc = ViscositySpec::Variable {
        trace: vec![Complex64::new(2.0, 0.0), Complex64::new(1.0, 0.0)],
        normal_derivative: vec![],
    };
    let m = 200_000;
    let oracle: f64 = (0..m).map(|i| 2.0 + ((i as f64 + 0.5) * TAU / m as f64).cos()).sum::<f64>() * TAU / m as f64;
    assert_relative_eq!(oracle, 4.0 * PI, max_relative = 1e-10);
    assert_relative_eq!(total_weighted_curvature(&circle, &visc, 1, NQ).unwrap(), oracle, max_relative = 1e-10);
}

#[test]
fn nonpositive_viscosity_is_an_error() {
    let visc = ViscositySpec::Variable {
        trace: vec![Complex64::new(0.5, 0.0), Complex64::new(1.0, 0.0)],
        normal_derivative: vec![],
    };
    let circle = PlanarDomain::circle(1.0, [0.0, 0.0]);
    assert!(total_weighted_curvature(&circle, &visc, 1, NQ).is_err());
    assert!(curve_jet(&circle, &visc, PI).is_err());
}

#[test]
fn nonconvex_star_has_negative_curvature_somewhere() {
    let d = PlanarDomain::cosine_star(1.0, 0.2, 3);
    d.validate(&ValidationOptions::default()).unwrap();
    let min = (0..NQ).map(|i| d.curvature(i as f64 * TAU / NQ as f64)).fold(f64::INFINITY, f64::min);
    assert!(min < 0.0);
    assert_relative_eq!(
        total_weighted_curvature(&d, &ViscositySpec::Constant(1.0), 0, NQ).unwrap(),
        TAU,
        max_relative = 1e-10
    );
}

/// Random smooth star-shaped curves `r(θ) = 1 + Σ a_k cos kθ + b_k sin kθ`
/// with small harmonics, as Fourier coefficient lists.
fn star_curve() -> impl Strategy<Value = PlanarDomain> {
    prop::collection::vec((-0.04f64..0.04, -0.04f64..0.04), 1..6).prop_map(|h| {
        let modes = h.len() + 3;
        let mut x = vec![Complex64::new(0.0, 0.0); modes];
        let mut y = vec![Complex64::new(0.0, 0.0); modes];
        x[1] += 1.0;
        y[1] += Complex64::new(0.0, -1.0);
        // r(θ)e^{iθ} with r = 1 + Re Σ c_k e^{ikθ}, c_k = a_k − i b_k, k ≥ 2:
        // c e^{ikθ}e^{iθ}/2 + c̄ e^{−ikθ}e^{iθ}/2 splits into modes k+1 and k−1.
        for (j, (a, b)) in h.iter().enumerate() {
            let k = j + 2;
            let c = Complex64::new(*a, -*b);
            // z(θ) = x + iy; mode m coefficient of z is z_m, then x_m, y_m via
            // x = Re(z), y = Im(z) for z = Σ z_m e^{imθ} + Σ w_m e^{−imθ}.
            let up = 0.5 * c; // multiplies e^{i(k+1)θ}
            let down = 0.5 * c.conj(); // multiplies e^{−i(k−1)θ}
                                       // e^{imθ} term with complex weight u contributes x_m += u, y_m += −iu.
            x[k + 1] += up;
            y[k + 1] += Complex64::new(0.0, -1.0) * up;
            // e^{−imθ} term with weight v: Re(v e^{−imθ}) = Re(v̄ e^{imθ}),
            // Im(v e^{−imθ}) = Re(−i v e^{−imθ}) = Re(conj(−iv) e^{imθ}) = Re(i v̄ e^{imθ}).
            x[k - 1] += down.conj();
            y[k - 1] += Complex64::new(0.0, 1.0) * down.conj();
        }
        PlanarDomain::from_coefficients("star", x, y)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn turning_number_is_two_pi(d in star_curve()) {
        d.validate(&ValidationOptions::default()).unwrap();
        let tc = total_weighted_curvature(&d, &ViscositySpec::Constant(1.0), 0, NQ).unwrap();
        prop_assert!((tc - TAU).abs() < 1e-8, "total curvature {}", tc);
    }

    #[test]
    fn rigid_motions_preserve_invariants(
        d in star_curve(),
        rot in 0.0f64..TAU,
        tx in -3.0f64..3.0,
        ty in -3.0f64..3.0,
        shift in 0.0f64..TAU,
    ) {
        let t = DomainTransform { scale: 1.0, rotation: rot, translation: [tx, ty], parameter_shift: shift };
        let moved = d.transformed(&t);
        let one = ViscositySpec::Constant(1.0);
        prop_assert!((perimeter(&moved, NQ) - perimeter(&d, NQ)).abs() < 1e-12);
        let (c0, c1) = (
            total_weighted_curvature(&d, &one, 1, NQ).unwrap(),
            total_weighted_curvature(&moved, &one, 1, NQ).unwrap(),
        );
        prop_assert!((c0 - c1).abs() < 1e-12);
        // Pointwise: the moved curve at parameter s is the old one at s + shift.
        let s = 0.77;
        prop_assert!((moved.curvature(s) - d.curvature(s + shift)).abs() < 1e-12);
    }

    #[test]
    fn scaling_multiplies_perimeter_and_divides_curvature(d in star_curve(), r in 0.2f64..5.0) {
        let scaled = d.transformed(&DomainTransform { scale: r, ..DomainTransform::default() });
        prop_assert!((perimeter(&scaled, NQ) - r * perimeter(&d, NQ)).abs() < 1e-12 * r.max(1.0) * 10.0);
        for s in [0.0, 1.3, 4.4] {
            let (k0, k1) = (d.curvature(s), scaled.curvature(s));
            prop_assert!((k1 - k0 / r).abs() <= 1e-12 * (k0.abs() / r).max(1.0));
        }
    }

    #[test]
    fn jet_encodes_curvature_in_metric_derivative(d in star_curve(), s in 0.0f64..TAU) {
        let jet = curve_jet(&d, &ViscositySpec::Constant(1.0), s).unwrap();
        prop_assert!((0.5 * jet.dg_lower_dn(0, 0) - jet.kappa()[0]).abs() < 1e-15);
        prop_assert!((jet.kappa()[0] - d.curvature(s)).abs() < 1e-15);
    }
}

//! Contour and fibre integrals, pointwise heat densities, and their boundary
//! integrals.

use std::f64::consts::{PI, TAU};

use approx::assert_relative_eq;
use num_complex::Complex64;
use stokes_geometry::quadrature::gauss_legendre;
use stokes_geometry::{total_weighted_curvature, BoundaryJet, PlanarDomain, ViscositySpec};
use stokes_symbols::{
    a0_density, a1_density, a1_density_with_index, assemble_coefficient, assemble_coefficient_numeric,
    contour_heat_factor, numeric_density, pole_coefficients, radial_integral, residue_heat_factor, Coefficient,
    ContourOptions, IndexConvention, MuConvention, PipelineOptions, SymbolContext, VarpiLevel,
};

const NQ: usize = 256;

/// `∫₀^∞ f(r) dr` via `r = u/(1−u)` and composite Gauss–Legendre on [0, 1).
fn half_line(f: impl Fn(f64) -> f64) -> f64 {
    let rule = gauss_legendre(20);
    let panels = 200;
    let mut sum = 0.0;
    for p in 0..panels {
        let (a, b) = (p as f64 / panels as f64, (p + 1) as f64 / panels as f64);
        let m = rule.mapped(a, b);
        for (u, w) in m.nodes.iter().zip(&m.weights) {
            let r = u / (1.0 - u);
            sum += w * f(r) / ((1.0 - u) * (1.0 - u));
        }
    }
    sum
}

/// Derivative oracle for the pole factors: differentiating
/// `(i/2π)∮ e^{−tτ}(c−τ)^{−1} dτ = e^{−tc}` in c gives the higher orders,
/// `(k−1)! I_k = (−∂_c)^{k−1} e^{−tc}`, evaluated here by a central
/// difference of the numeric simple-pole contour.
fn differentiated_simple_pole(k: usize, t: f64, c: f64) -> f64 {
    let simple = |c: f64| contour_heat_factor(1, t, c, ContourOptions::default()).unwrap();
    let h = 1e-3;
    match k {
        1 => simple(c),
        2 => -(simple(c + h) - simple(c - h)) / (2.0 * h),
        _ => unreachable!(),
    }
}

#[test]
fn simple_pole_factor() {
    assert_relative_eq!(residue_heat_factor(1, 1.0, 2.0).unwrap(), (-2.0f64).exp(), max_relative = 1e-15);
}

#[test]
fn double_pole_factor() {
    for (t, xi) in [(1.0, 1.0), (0.3, 2.5)] {
        let c = 2.0 * xi;
        assert_relative_eq!(residue_heat_factor(2, t, c).unwrap(), t * (-2.0f64 * t * xi).exp(), max_relative = 1e-15);
    }
    // Derivative-in-c oracle: the double pole is −∂_c of the simple one.
    assert_relative_eq!(
        residue_heat_factor(2, 0.7, 1.5).unwrap(),
        differentiated_simple_pole(2, 0.7, 1.5),
        max_relative = 1e-6
    );
}

#[test]
fn residue_matches_numeric_contour() {
    for k in 1..=3 {
        for t in [0.1, 1.0] {
            for c in [1.0, 4.0] {
                let closed = residue_heat_factor(k, t, c).unwrap();
                let numeric = contour_heat_factor(k, t, c, ContourOptions::default()).unwrap();
                assert!((closed - numeric).abs() <= 1e-8, "k={k} t={t} c={c}: {closed} vs {numeric}");
            }
        }
    }
    let closed = residue_heat_factor(2, 0.5, 3.0).unwrap();
    let numeric = contour_heat_factor(2, 0.5, 3.0, ContourOptions::default()).unwrap();
    assert!((closed - numeric).abs() <= 1e-8);
    // A different rectangle encloses the same pole.
    let tall = ContourOptions { half_width: 2.0, half_height: 5.0, nodes_per_side: 160 };
    assert!((contour_heat_factor(3, 1.0, 4.0, tall).unwrap() - residue_heat_factor(3, 1.0, 4.0).unwrap()).abs() < 1e-8);
}

#[test]
fn residue_rejects_bad_arguments() {
    assert!(residue_heat_factor(0, 1.0, 1.0).is_err());
    assert!(residue_heat_factor(2, -1.0, 1.0).is_err());
    assert!(residue_heat_factor(2, 1.0, 0.0).is_err());
    let flat = ContourOptions { half_height: 0.0, ..ContourOptions::default() };
    assert!(contour_heat_factor(1, 1.0, 1.0, flat).is_err());
}

#[test]
fn radial_integral_values() {
    assert_relative_eq!(radial_integral(2, 2.0, false).unwrap(), 1.0, max_relative = 1e-15);
    assert_relative_eq!(radial_integral(3, 1.0, false).unwrap(), TAU, max_relative = 1e-14);
    assert_relative_eq!(radial_integral(2, 2.0, true).unwrap(), 1.0, max_relative = 1e-15);
    assert!(radial_integral(2, 0.0, false).is_err());
    assert!(radial_integral(1, 1.0, false).is_err());
}

#[test]
fn radial_integral_matches_one_dimensional_quadrature() {
    for c in [0.5, 2.0] {
        // n = 2: the fibre is the line, two half-lines.
        let line = 2.0 * half_line(|r| (-c * r).exp());
        assert_relative_eq!(radial_integral(2, c, false).unwrap(), line, max_relative = 1e-10);
        assert_relative_eq!(radial_integral(2, c, true).unwrap(), line, max_relative = 1e-10);
        // n = 3: polar coordinates, angular factor 2π (or π for cos²θ).
        let radial = half_line(|r| r * (-c * r).exp());
        assert_relative_eq!(radial_integral(3, c, false).unwrap(), TAU * radial, max_relative = 1e-10);
        let m = 64;
        let cos2: f64 = (0..m).map(|i| (TAU * i as f64 / m as f64).cos().powi(2)).sum::<f64>() * TAU / m as f64;
        assert_relative_eq!(radial_integral(3, c, true).unwrap(), cos2 * radial, max_relative = 1e-10);
    }
}

#[test]
fn leading_density_values() {
    assert_relative_eq!(a0_density(2, 1.0, MuConvention::Paper).unwrap(), 1.0 / PI, max_relative = 1e-15);
    assert_relative_eq!(a0_density(3, 1.0, MuConvention::Paper).unwrap(), 3.0 / (8.0 * PI), max_relative = 1e-14);
    // Carried viscosity divides by μ^{n−1}.
    assert_relative_eq!(a0_density(3, 2.0, MuConvention::Carried).unwrap(), 3.0 / (32.0 * PI), max_relative = 1e-14);
    assert_relative_eq!(a0_density(2, 2.0, MuConvention::Paper).unwrap(), 1.0 / PI, max_relative = 1e-15);
    assert!(a0_density(2, 0.0, MuConvention::Carried).is_err());
}

#[test]
fn curvature_density_values() {
    let jet = BoundaryJet::adapted(&[1.0], 1.0, 0.0, &[]).unwrap();
    for conv in [MuConvention::Paper, MuConvention::Carried] {
        assert_relative_eq!(a1_density(&jet, conv), 5.0 / (4.0 * PI), max_relative = 1e-14);
    }
    // n = 3: 7Σκ/(32π) · w(μ) with w = μ (paper) or μ⁻¹ (carried).
    let jet = BoundaryJet::adapted(&[0.7, -0.4], 1.5, 0.3, &[0.2, 0.1]).unwrap();
    let base = 7.0 * 0.3 / (32.0 * PI);
    assert_relative_eq!(a1_density(&jet, MuConvention::Paper), base * 1.5, max_relative = 1e-14);
    assert_relative_eq!(a1_density(&jet, MuConvention::Carried), base / 1.5, max_relative = 1e-14);
}

#[test]
fn index_convention_audit_on_the_unit_circle() {
    let jet = BoundaryJet::adapted(&[1.0], 1.0, 0.0, &[]).unwrap();
    let mi = a1_density_with_index(&jet, MuConvention::Carried, IndexConvention::MetricInverse);
    let sl = a1_density_with_index(&jet, MuConvention::Carried, IndexConvention::SameAsLower);
    assert_relative_eq!(mi * TAU, 2.5, max_relative = 1e-14);
    assert_relative_eq!(sl * TAU, 0.5, max_relative = 1e-14);
}

#[test]
fn numeric_densities_match_closed_forms() {
    let jets = [
        BoundaryJet::adapted(&[1.0], 1.0, 0.0, &[]).unwrap(),
        BoundaryJet::adapted(&[0.7], 2.0, 0.5, &[0.3]).unwrap(),
        BoundaryJet::adapted(&[0.7, -0.4], 1.5, 0.3, &[0.2, 0.1]).unwrap(),
    ];
    for jet in &jets {
        for conv in [MuConvention::Paper, MuConvention::Carried] {
            for index in [IndexConvention::MetricInverse, IndexConvention::SameAsLower] {
                let opts = PipelineOptions { index_convention: index, ..PipelineOptions::default() };
                let a1 = numeric_density(jet, Coefficient::A1, conv, &opts).unwrap();
                assert_relative_eq!(a1, a1_density_with_index(jet, conv, index), max_relative = 1e-9);
                let a0 = numeric_density(jet, Coefficient::A0, conv, &opts).unwrap();
                assert_relative_eq!(a0, a0_density(jet.dim(), jet.mu(), conv).unwrap(), max_relative = 1e-12);
            }
        }
    }
}

#[test]
fn second_resolvent_pole_structure() {
    // Tr ϖ₋₂ has a double pole from ψ₀ and, for tangentially varying μ, an
    // odd triple pole; the pole fit reproduces the trace at a fresh τ.
    let jet = BoundaryJet::adapted(&[0.7], 2.0, 0.5, &[0.3]).unwrap();
    let ctx = SymbolContext::new(jet, 0.0, &[1.3]).unwrap();
    let n = pole_coefficients(VarpiLevel::Two, &ctx).unwrap();
    assert_eq!(n.len(), 3);
    assert!(n[0].norm() < 1e-10);
    let tau = Complex64::new(-0.4, 1.1);
    let r = Complex64::new(1.0, 0.0) / (Complex64::new(ctx.principal_value(), 0.0) - tau);
    let fit = n[0] * r + n[1] * r * r + n[2] * r * r * r;
    let direct = stokes_symbols::trace_varpi(VarpiLevel::Two, &ctx.with_tau(tau)).unwrap();
    assert!((fit - direct).norm() < 1e-12 * direct.norm());
}

#[test]
fn unit_disk_coefficients() {
    let disk = PlanarDomain::circle(1.0, [0.0, 0.0]);
    let mu = ViscositySpec::Constant(1.0);
    for conv in [MuConvention::Paper, MuConvention::Carried] {
        let a0 = assemble_coefficient(&disk, &mu, Coefficient::A0, conv, NQ).unwrap();
        let a1 = assemble_coefficient(&disk, &mu, Coefficient::A1, conv, NQ).unwrap();
        assert_relative_eq!(a0, 2.0, max_relative = 1e-10);
        assert_relative_eq!(a1, 2.5, max_relative = 1e-10);
        let opts = PipelineOptions::default();
        let b0 = assemble_coefficient_numeric(&disk, &mu, Coefficient::A0, conv, &opts, 64).unwrap();
        let b1 = assemble_coefficient_numeric(&disk, &mu, Coefficient::A1, conv, &opts, 64).unwrap();
        assert!((b0 - a0).abs() < 1e-6 && (b1 - a1).abs() < 1e-6, "{b0} {b1}");
    }
}

#[test]
fn variable_viscosity_unit_circle() {
    let disk = PlanarDomain::circle(1.0, [0.0, 0.0]);
    let mu = ViscositySpec::Variable {
        trace: vec![Complex64::new(2.0, 0.0), Complex64::new(1.0, 0.0)],
        normal_derivative: vec![Complex64::new(0.3, 0.0)],
    };
    let weighted = total_weighted_curvature(&disk, &mu, 1, NQ).unwrap();
    assert_relative_eq!(weighted, 4.0 * PI, max_relative = 1e-12);
    let paper = assemble_coefficient(&disk, &mu, Coefficient::A1, MuConvention::Paper, NQ).unwrap();
    assert_relative_eq!(paper, 5.0 / (4.0 * PI) * weighted, max_relative = 1e-12);
    assert_relative_eq!(paper, 5.0, max_relative = 1e-10);
    // In two dimensions the carried weight μ^{2−n} is 1.
    let carried = assemble_coefficient(&disk, &mu, Coefficient::A1, MuConvention::Carried, NQ).unwrap();
    assert_relative_eq!(carried, 2.5, max_relative = 1e-10);
    // Carried a₀ = ∮ 1/(πμ) ds = 2/√3 for μ = 2 + cos s.
    let a0 = assemble_coefficient(&disk, &mu, Coefficient::A0, MuConvention::Carried, NQ).unwrap();
    assert_relative_eq!(a0, 2.0 / 3f64.sqrt(), max_relative = 1e-10);
    let opts = PipelineOptions::default();
    let numeric = assemble_coefficient_numeric(&disk, &mu, Coefficient::A1, MuConvention::Paper, &opts, 64).unwrap();
    assert!((numeric - 5.0).abs() < 1e-6);
}

#[test]
fn ellipse_curvature_term_is_topological() {
    // ∮κ ds = 2π for every convex curve: a₁ = 5/2 at unit viscosity.
    let e = PlanarDomain::ellipse(2.0, 0.5);
    let a1 =
        assemble_coefficient(&e, &ViscositySpec::Constant(1.0), Coefficient::A1, MuConvention::Carried, 1024).unwrap();
    assert_relative_eq!(a1, 2.5, max_relative = 1e-10);
}

#[test]
fn too_few_boundary_nodes() {
    let disk = PlanarDomain::circle(1.0, [0.0, 0.0]);
    assert!(
        assemble_coefficient(&disk, &ViscositySpec::Constant(1.0), Coefficient::A0, MuConvention::Carried, 2).is_err()
    );
}

//! Galerkin and MFS spectra cross-checked against the exact disk modes,
//! against each other on an ellipse, and for rigid-motion invariance.

use num_complex::Complex64;
use stokes_eigensolver::{
    disk_mode_spectrum, galerkin_spectrum, mfs_dtn, rayleigh_check, EigenError, MfsOptions, RayleighOptions,
};
use stokes_geometry::{DomainTransform, PlanarDomain, ValidationOptions};

fn unit_disk() -> PlanarDomain {
    PlanarDomain::circle(1.0, [0.0, 0.0])
}

fn max_rel_error(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs() / y.abs()).fold(0.0, f64::max)
}

/// First `k` eigenvalues after the three zero modes.
fn positives(values: &[f64], k: usize) -> Vec<f64> {
    values[3..3 + k].to_vec()
}

/// A simple curve `(cos s, sin s + cos 2s)` that is not star-shaped about
/// its centroid (each vertical line meets it twice, so it is simple).
fn bean() -> PlanarDomain {
    let c = |re: f64, im: f64| Complex64::new(re, im);
    PlanarDomain::from_coefficients(
        "bean",
        vec![c(0.0, 0.0), c(1.0, 0.0)],
        vec![c(0.0, 0.0), c(0.0, -1.0), c(1.0, 0.0)],
    )
}

#[test]
fn galerkin_matches_disk_modes() {
    let exact = disk_mode_spectrum(1.0, 1.0, 30).unwrap();
    let g = galerkin_spectrum(&unit_disk(), 1.0, 12).unwrap();
    assert_eq!(g.spectrum.zero_modes, 3);
    assert!(g.spectrum.eigenvalues.iter().take(3).all(|l| l.abs() < 1e-8));
    let err = max_rel_error(&positives(&g.spectrum.eigenvalues, 20), &positives(&exact.eigenvalues, 20));
    assert!(err <= 1e-4, "galerkin vs modes {err:e}");
}

#[test]
fn galerkin_zero_modes_from_degree_three() {
    for degree in [3, 6, 10] {
        let g = galerkin_spectrum(&unit_disk(), 2.0, degree).unwrap();
        assert_eq!(g.spectrum.zero_modes, 3, "degree {degree}");
    }
}

#[test]
fn galerkin_eigenpairs_satisfy_rayleigh() {
    for domain in [unit_disk(), PlanarDomain::ellipse(2.0, 1.0)] {
        let g = galerkin_spectrum(&domain, 1.5, 10).unwrap();
        let opts = RayleighOptions { radial_nodes: 20, angular_nodes: 256, zero_scale: 1e-8 };
        for k in 0..30 {
            let lambda = g.spectrum.eigenvalues[k];
            let defect = rayleigh_check(&g.eigenfield(k), lambda, 1.5, &domain, &opts).unwrap();
            if lambda >= opts.zero_scale {
                assert!(defect <= 1e-8, "{}: mode {k} defect {defect:e}", domain.label());
            } else {
                // Zero modes: the quotient itself is ≈ 0.
                assert!(defect * opts.zero_scale <= 1e-10, "zero mode {k}");
            }
        }
    }
}

#[test]
fn galerkin_rejects_bad_input() {
    let d = bean();
    d.validate(&ValidationOptions::default()).unwrap();
    assert!(!d.is_star_shaped_about(d.centroid(), 1024));
    assert!(matches!(galerkin_spectrum(&d, 1.0, 6), Err(EigenError::UnsupportedDomain(_))));
    assert!(matches!(galerkin_spectrum(&unit_disk(), 1.0, 21), Err(EigenError::InvalidParameter(_))));
    assert!(matches!(galerkin_spectrum(&unit_disk(), 1.0, 0), Err(EigenError::InvalidParameter(_))));
    assert!(matches!(galerkin_spectrum(&unit_disk(), 0.0, 5), Err(EigenError::InvalidParameter(_))));
}

#[test]
fn mfs_matches_disk_modes_and_is_symmetric() {
    let exact = disk_mode_spectrum(1.0, 1.0, 30).unwrap();
    let m = mfs_dtn(&unit_disk(), 1.0, &MfsOptions { n_sources: 128, ..MfsOptions::default() }).unwrap();
    assert_eq!(m.spectrum.zero_modes, 3);
    let err = max_rel_error(&positives(&m.spectrum.eigenvalues, 20), &positives(&exact.eigenvalues, 20));
    assert!(err <= 1e-6, "mfs vs modes {err:e}");
    let asym = m.spectrum.diagnostics["asymmetry"];
    assert!(asym <= 1e-6, "asymmetry {asym:e}");
    assert!(m.spectrum.eigenvalues.iter().all(|&l| l >= -1e-8));
}

#[test]
fn mfs_eigenfields_satisfy_rayleigh_on_the_disk() {
    let d = unit_disk();
    let m = mfs_dtn(&d, 1.0, &MfsOptions { n_sources: 128, ..MfsOptions::default() }).unwrap();
    let opts = RayleighOptions::default();
    for k in 3..40 {
        let field = m.eigenfield(k).unwrap();
        let defect = rayleigh_check(&field, m.spectrum.eigenvalues[k], 1.0, &d, &opts).unwrap();
        assert!(defect <= 1e-4, "mode {k}: {defect:e}");
    }
}

#[test]
fn nodal_dtn_annihilates_rigid_motions() {
    let d = PlanarDomain::ellipse(1.5, 1.0);
    let m = mfs_dtn(&d, 1.0, &MfsOptions { n_sources: 96, ..MfsOptions::default() }).unwrap();
    let s = m.nodal_dtn().unwrap();
    let c = d.centroid();
    let pts = &m.collocation.points;
    let rot: Vec<f64> = pts.iter().flat_map(|p| [-(p[1] - c[1]), p[0] - c[0]]).collect();
    let tx: Vec<f64> = pts.iter().flat_map(|_| [1.0, 0.0]).collect();
    let scale = m.spectrum.eigenvalues[m.spectrum.len() / 2];
    for v in [rot, tx] {
        let out: f64 =
            (0..v.len()).map(|i| (0..v.len()).map(|j| s[(i, j)] * v[j]).sum::<f64>().powi(2)).sum::<f64>().sqrt();
        let norm: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        assert!(out <= 1e-6 * scale * norm, "rigid motion not annihilated: {out:e}");
    }
}

#[test]
fn ellipse_zero_modes_and_cross_solver_agreement() {
    let e = PlanarDomain::ellipse(2.0, 1.0);
    let g = galerkin_spectrum(&e, 1.0, 16).unwrap();
    let m = mfs_dtn(&e, 1.0, &MfsOptions { n_sources: 256, offset: 0.2, ..MfsOptions::default() }).unwrap();
    assert_eq!(g.spectrum.zero_modes, 3);
    assert_eq!(m.spectrum.zero_modes, 3);
    let err = max_rel_error(&positives(&g.spectrum.eigenvalues, 15), &positives(&m.spectrum.eigenvalues, 15));
    assert!(err <= 1e-8, "ellipse galerkin vs mfs {err:e}");
}

#[test]
fn scaling_laws_for_mfs() {
    let opts = MfsOptions { n_sources: 96, ..MfsOptions::default() };
    let base = mfs_dtn(&PlanarDomain::ellipse(1.5, 1.0), 1.0, &opts).unwrap().spectrum;
    let big = mfs_dtn(&PlanarDomain::ellipse(3.0, 2.0), 1.0, &opts).unwrap().spectrum;
    let visc = mfs_dtn(&PlanarDomain::ellipse(1.5, 1.0), 3.0, &opts).unwrap().spectrum;
    for k in 3..23 {
        assert!((big.eigenvalues[k] - base.eigenvalues[k] / 2.0).abs() <= 1e-5 * base.eigenvalues[k] / 2.0);
        assert!((visc.eigenvalues[k] - 3.0 * base.eigenvalues[k]).abs() <= 1e-5 * 3.0 * base.eigenvalues[k]);
    }
}

#[test]
fn rigid_motion_invariance() {
    let e = PlanarDomain::ellipse(2.0, 1.0);
    let t = DomainTransform { scale: 1.0, rotation: 0.7, translation: [1.5, -2.0], parameter_shift: 0.4 };
    let moved = e.transformed(&t);
    let g0 = galerkin_spectrum(&e, 1.0, 12).unwrap().spectrum;
    let g1 = galerkin_spectrum(&moved, 1.0, 12).unwrap().spectrum;
    let err = max_rel_error(&positives(&g1.eigenvalues, 20), &positives(&g0.eigenvalues, 20));
    assert!(err <= 1e-8, "galerkin rigid-motion defect {err:e}");
    let opts = MfsOptions { n_sources: 192, offset: 0.3, ..MfsOptions::default() };
    let m0 = mfs_dtn(&e, 1.0, &opts).unwrap().spectrum;
    let m1 = mfs_dtn(&moved, 1.0, &opts).unwrap().spectrum;
    let err = max_rel_error(&positives(&m1.eigenvalues, 20), &positives(&m0.eigenvalues, 20));
    assert!(err <= 1e-5, "mfs rigid-motion defect {err:e}");
}

#[test]
fn mfs_rejects_bad_options() {
    let d = unit_disk();
    let bad = [
        MfsOptions { n_sources: 2, ..MfsOptions::default() },
        MfsOptions { n_collocation: Some(10), ..MfsOptions::default() },
        MfsOptions { offset: 1.0, ..MfsOptions::default() },
        MfsOptions { offset: 0.0, ..MfsOptions::default() },
    ];
    for o in bad {
        assert!(matches!(mfs_dtn(&d, 1.0, &o), Err(EigenError::InvalidParameter(_))), "{o:?}");
    }
}

#[test]
fn mfs_conditioning_error_records_residual() {
    // Far too few sources to represent a rotation on an elongated ellipse.
    let d = PlanarDomain::ellipse(4.0, 1.0);
    let o = MfsOptions { n_sources: 6, offset: 0.9, ..MfsOptions::default() };
    match mfs_dtn(&d, 1.0, &o) {
        Err(EigenError::Conditioning { stage, detail }) => {
            assert_eq!(stage, "mfs least squares");
            assert!(detail.contains("residual"));
        }
        other => panic!("expected conditioning error, got {other:?}"),
    }
}

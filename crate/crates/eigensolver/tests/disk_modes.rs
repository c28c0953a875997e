//! The exact disk spectrum, checked against an independent traction
//! computation from the stream-function fields and against the scaling
//! laws of the Rayleigh quotient.

use approx::assert_relative_eq;
use proptest::prelude::*;
use stokes_eigensolver::{
    disk_mode_spectrum, disk_spectrum_with_count, mode_dtn_matrix, solve, EigenError, Method, SpectrumRequest,
};
use stokes_geometry::PlanarDomain;

/// Stokes field of angular index `k` on the disk of radius `r0`: stream
/// function `(a ρ^k + b ρ^{k+2}) cos kθ`, `ρ = r/r0`, velocity `∇⊥ψ` in the
/// polar convention `u_r = ψ_θ/r`, `u_θ = −ψ_r`, and the pressure
/// `−4(k+1)μ b ρ^k sin kθ / r0²`. Cartesian stress by central differences.
struct ModeField {
    k: f64,
    a: f64,
    b: f64,
    r0: f64,
    mu: f64,
}

impl ModeField {
    fn velocity(&self, x: [f64; 2]) -> [f64; 2] {
        let r = x[0].hypot(x[1]);
        let th = x[1].atan2(x[0]);
        let rho = r / self.r0;
        let f = self.a * rho.powf(self.k) + self.b * rho.powf(self.k + 2.0);
        let fp =
            (self.a * self.k * rho.powf(self.k - 1.0) + self.b * (self.k + 2.0) * rho.powf(self.k + 1.0)) / self.r0;
        let ur = -(self.k / r) * f * (self.k * th).sin();
        let ut = -fp * (self.k * th).cos();
        [ur * th.cos() - ut * th.sin(), ur * th.sin() + ut * th.cos()]
    }

    fn pressure(&self, x: [f64; 2]) -> f64 {
        let r = x[0].hypot(x[1]);
        let th = x[1].atan2(x[0]);
        let rho = r / self.r0;
        -4.0 * (self.k + 1.0) * self.mu * self.b * rho.powf(self.k) * (self.k * th).sin() / (self.r0 * self.r0)
    }

    fn gradient(&self, x: [f64; 2]) -> [[f64; 2]; 2] {
        let h = 1e-5 * self.r0;
        let mut g = [[0.0; 2]; 2];
        for j in 0..2 {
            let (mut xp, mut xm) = (x, x);
            xp[j] += h;
            xm[j] -= h;
            let (up, um) = (self.velocity(xp), self.velocity(xm));
            for i in 0..2 {
                g[i][j] = (up[i] - um[i]) / (2.0 * h);
            }
        }
        g
    }

    fn traction(&self, x: [f64; 2], n: [f64; 2]) -> [f64; 2] {
        let g = self.gradient(x);
        let p = self.pressure(x);
        let mut t = [0.0; 2];
        for i in 0..2 {
            for j in 0..2 {
                let sigma = self.mu * (g[i][j] + g[j][i]) - if i == j { p } else { 0.0 };
                t[i] += sigma * n[j];
            }
        }
        t
    }

    /// `Δu − ∇p/μ` at `x` by second differences (vanishes for Stokes flow).
    fn momentum_residual(&self, x: [f64; 2]) -> f64 {
        let h = 1e-3 * self.r0;
        let u0 = self.velocity(x);
        let mut lap = [0.0; 2];
        let mut grad_p = [0.0; 2];
        for j in 0..2 {
            let (mut xp, mut xm) = (x, x);
            xp[j] += h;
            xm[j] -= h;
            let (up, um) = (self.velocity(xp), self.velocity(xm));
            for i in 0..2 {
                lap[i] += (up[i] - 2.0 * u0[i] + um[i]) / (h * h);
            }
            grad_p[j] = (self.pressure(xp) - self.pressure(xm)) / (2.0 * h);
        }
        (lap[0] - grad_p[0] / self.mu).hypot(lap[1] - grad_p[1] / self.mu)
    }
}

#[test]
fn mode_fields_solve_stokes_and_are_dtn_eigenfunctions() {
    for &(r0, mu) in &[(1.0, 1.0), (2.0, 0.7), (0.5, 3.0)] {
        for k in 2..7usize {
            let m = mode_dtn_matrix(k, r0, mu);
            // Eigenvectors of the symmetric mode matrix in the
            // (u_r, u_θ) boundary-coefficient basis are (1, ±1)/√2; convert
            // to stream-function coefficients via the velocity relations
            // −k(a + b) = v_r, −(k a + (k+2) b) = v_θ.
            for (sign, lambda) in [(1.0, 2.0 * mu * (k as f64 - 1.0) / r0), (-1.0, 2.0 * mu * (k as f64 + 1.0) / r0)] {
                let (vr, vt) = (1.0, sign);
                let kf = k as f64;
                let b = (kf * vt - kf * vr) / (-2.0 * kf) * r0;
                let a = -vr * r0 / kf - b;
                let field = ModeField { k: kf, a, b, r0, mu };
                // The mode matrix acts on (v_r, v_θ) with the same eigenvalue.
                let mv = [m[0][0] * vr + m[0][1] * vt, m[1][0] * vr + m[1][1] * vt];
                assert_relative_eq!(mv[0], lambda * vr, max_relative = 1e-12);
                assert_relative_eq!(mv[1], lambda * vt, max_relative = 1e-12);
                for s in [0.3_f64, 1.7, 4.0] {
                    let x = [r0 * s.cos(), r0 * s.sin()];
                    let n = [s.cos(), s.sin()];
                    let u = field.velocity(x);
                    let t = field.traction(x, n);
                    let scale = u[0].hypot(u[1]) * lambda;
                    assert!((t[0] - lambda * u[0]).abs() < 1e-6 * scale, "k={k} traction {t:?} vs {lambda}·{u:?}");
                    assert!((t[1] - lambda * u[1]).abs() < 1e-6 * scale);
                    let xi = [0.4 * x[0], 0.4 * x[1]];
                    assert!(field.momentum_residual(xi) < 1e-3 * (1.0 + lambda), "k={k} not a Stokes flow");
                }
            }
        }
    }
}

#[test]
fn three_zero_modes_for_any_disk() {
    for &(r, mu) in &[(1.0, 1.0), (0.3, 5.0), (4.0, 0.2)] {
        let s = disk_mode_spectrum(r, mu, 30).unwrap();
        assert_eq!(s.zero_modes, 3);
        assert!(s.eigenvalues[3] > 0.0);
    }
}

#[test]
fn closed_form_multiplicities() {
    let s = disk_mode_spectrum(1.0, 1.0, 6).unwrap();
    let expect =
        [0.0, 0.0, 0.0, 2.0, 2.0, 4.0, 4.0, 4.0, 4.0, 6.0, 6.0, 6.0, 6.0, 8.0, 8.0, 8.0, 8.0, 10.0, 10.0, 10.0, 10.0];
    assert_eq!(s.len(), expect.len());
    for (a, b) in s.eigenvalues.iter().zip(expect) {
        assert!((a - b).abs() < 1e-12, "{a} vs {b}");
    }
    assert_eq!(s.modes[0].label, "k0:rotation");
    assert!(s.modes.iter().skip(1).all(|m| m.multiplicity_hint == 2));
}

#[test]
fn scaling_laws() {
    let base = disk_spectrum_with_count(1.0, 1.0, 400).unwrap();
    let big = disk_spectrum_with_count(2.0, 1.0, 400).unwrap();
    let visc = disk_spectrum_with_count(1.0, 3.0, 400).unwrap();
    for k in 3..400 {
        assert_relative_eq!(big.eigenvalues[k], base.eigenvalues[k] / 2.0, max_relative = 1e-10);
        assert_relative_eq!(visc.eigenvalues[k], 3.0 * base.eigenvalues[k], max_relative = 1e-10);
    }
}

#[test]
fn weyl_counting_slope() {
    let s = disk_mode_spectrum(1.0, 1.0, 200).unwrap();
    let ratio = s.counting(200.0) as f64 / 200.0;
    assert!((1.96..=2.04).contains(&ratio), "N(200)/200 = {ratio}");
    let mut last = 0;
    for i in 0..400 {
        let n = s.counting(i as f64);
        assert!(n >= last);
        last = n;
    }
}

#[test]
fn errors() {
    assert!(matches!(disk_mode_spectrum(0.0, 1.0, 5), Err(EigenError::InvalidParameter(_))));
    assert!(matches!(disk_mode_spectrum(1.0, -1.0, 5), Err(EigenError::InvalidParameter(_))));
    assert!(matches!(disk_mode_spectrum(1.0, 1.0, 0), Err(EigenError::InvalidParameter(_))));
    let req = SpectrumRequest {
        domain: PlanarDomain::circle(1.0, [0.0, 0.0]),
        mu: 1.0,
        method: Method::DiskModes { k_max: Some(5) },
        count: 100,
    };
    assert!(matches!(solve(&req), Err(EigenError::InsufficientModes { requested: 100, available: 17 })));
    let ellipse = SpectrumRequest { domain: PlanarDomain::ellipse(2.0, 1.0), ..req };
    assert!(matches!(solve(&ellipse), Err(EigenError::UnsupportedDomain(_))));
}

#[test]
fn translated_disk_through_dispatcher() {
    let req = SpectrumRequest {
        domain: PlanarDomain::circle(2.0, [3.0, -1.0]),
        mu: 1.0,
        method: Method::DiskModes { k_max: None },
        count: 41,
    };
    let s = solve(&req).unwrap();
    assert_eq!(s.len(), 41);
    assert_relative_eq!(s.eigenvalues[3], 1.0, max_relative = 1e-12);
}

#[test]
fn csv_layout() {
    let s = disk_mode_spectrum(1.0, 1.0, 3).unwrap();
    let mut buf = Vec::new();
    s.write_csv(&mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "index,lambda,multiplicity_hint,mode_tag,solver");
    assert!(lines.next().unwrap().starts_with("1,0.00000000000000000e0,1,k0:rotation,disk_modes"));
    assert_eq!(text.lines().count(), 1 + s.len());
    let meta = s.sidecar();
    assert_eq!(meta["solver"], "disk_modes");
    assert_eq!(meta["zero_modes"], 3);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn scaling_holds_for_random_radius_and_viscosity(r in 0.1f64..10.0, mu in 0.1f64..10.0, c in 0.2f64..5.0) {
        let a = disk_mode_spectrum(r, mu, 40).unwrap();
        let b = disk_mode_spectrum(c * r, mu, 40).unwrap();
        let v = disk_mode_spectrum(r, c * mu, 40).unwrap();
        prop_assert_eq!(a.zero_modes, 3);
        for k in 3..a.len() {
            prop_assert!((b.eigenvalues[k] - a.eigenvalues[k] / c).abs() <= 1e-8 * a.eigenvalues[k] / c);
            prop_assert!((v.eigenvalues[k] - a.eigenvalues[k] * c).abs() <= 1e-8 * a.eigenvalues[k] * c);
        }
    }

    #[test]
    fn counting_function_is_nondecreasing(k_max in 2usize..60, probes in prop::collection::vec(0.0f64..300.0, 2..20)) {
        let s = disk_mode_spectrum(1.0, 1.0, k_max).unwrap();
        let mut p = probes.clone();
        p.sort_by(f64::total_cmp);
        let counts: Vec<usize> = p.iter().map(|&l| s.counting(l)).collect();
        prop_assert!(counts.windows(2).all(|w| w[0] <= w[1]));
        prop_assert!(s.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
        prop_assert!(s.eigenvalues.iter().all(|&l| l >= 0.0));
    }
}

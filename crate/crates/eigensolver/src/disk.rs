//! Exact Steklov spectrum of the disk, one angular Fourier mode at a time.
//!
//! For constant viscosity a divergence-free field is `u = ∇⊥ψ` with a
//! biharmonic stream function. Regular at the origin, angular index `k ≥ 1`
//! gives `ψ = (A ρ^k + B ρ^{k+2}) cos kθ` with `ρ = r/R`, so
//!
//! ```text
//! u_r = −(k/r) f sin kθ,   u_θ = −f′ cos kθ,   p = −4(k+1)μ B ρ^k sin kθ / R²
//! ```
//!
//! (the pressure is the harmonic conjugate that makes `μΔu = ∇p`). Writing
//! the boundary velocity and boundary traction `(σ_rr, σ_rθ)` in the
//! coefficients `(sin kθ, cos kθ)` gives two 2×2 matrices `V c`, `T c` in
//! `c = (A, B)`; the mode DtN matrix is `T V⁻¹`. The partner family with
//! `sin ↔ cos` exchanged has the same matrix, so every eigenvalue from
//! `k ≥ 1` has multiplicity two. Mode `k = 0` contributes only the rigid
//! rotation (the radial `k = 0` field carries flux and is excluded).

use std::collections::BTreeMap;

use crate::error::EigenError;
use crate::spectrum::{ModeTag, SolverKind, Spectrum};

/// Largest admissible angular index.
pub const MAX_DISK_MODE: usize = 1_000_000;

/// Boundary velocity matrix `V` of mode `k ≥ 1` on the disk of radius `R`:
/// rows `(u_r sin-coefficient, u_θ cos-coefficient)`, columns the basis
/// `ρ^k`, `ρ^{k+2}` (normalised so `ρ = 1` on the boundary).
#[must_use]
pub fn mode_velocity_matrix(k: usize, radius: f64) -> [[f64; 2]; 2] {
    let k = k as f64;
    // f = A ρ^k + B ρ^{k+2}: f(R) = A + B, R f′(R) = kA + (k+2)B.
    [[-k / radius, -k / radius], [-k / radius, -(k + 2.0) / radius]]
}

/// Boundary traction matrix `T` of mode `k ≥ 1`, same layout as
/// [`mode_velocity_matrix`].
#[must_use]
pub fn mode_traction_matrix(k: usize, radius: f64, mu: f64) -> [[f64; 2]; 2] {
    let k = k as f64;
    let s = 2.0 * mu / (radius * radius);
    [[-s * k * (k - 1.0), s * (k + 1.0) * (2.0 - k)], [-s * k * (k - 1.0), -s * k * (k + 1.0)]]
}

/// Mode DtN matrix `T V⁻¹` of angular index `k ≥ 1`.
#[must_use]
pub fn mode_dtn_matrix(k: usize, radius: f64, mu: f64) -> [[f64; 2]; 2] {
    let v = mode_velocity_matrix(k, radius);
    let t = mode_traction_matrix(k, radius, mu);
    let det = v[0][0] * v[1][1] - v[0][1] * v[1][0];
    let inv = [[v[1][1] / det, -v[0][1] / det], [-v[1][0] / det, v[0][0] / det]];
    let mut out = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = t[i][0] * inv[0][j] + t[i][1] * inv[1][j];
        }
    }
    out
}

/// Eigenvalues `(λ₋, λ₊)` of a 2×2 matrix with real spectrum, ascending,
/// from the symmetric part (the mode matrices are symmetric up to rounding).
fn symmetric_pair(m: [[f64; 2]; 2]) -> (f64, f64) {
    let (a, d) = (m[0][0], m[1][1]);
    let b = 0.5 * (m[0][1] + m[1][0]);
    let mean = 0.5 * (a + d);
    let rad = (0.25 * (a - d) * (a - d) + b * b).sqrt();
    (mean - rad, mean + rad)
}

/// Number of eigenvalues [`disk_mode_spectrum`] returns for `k_max`.
#[must_use]
pub fn disk_mode_count(k_max: usize) -> usize {
    if k_max < 2 {
        3
    } else {
        4 * k_max - 3
    }
}

/// Smallest `k_max` for which [`disk_mode_spectrum`] returns at least
/// `count` eigenvalues.
#[must_use]
pub fn disk_modes_for_count(count: usize) -> usize {
    let mut k = 2;
    while disk_mode_count(k) < count {
        k += 1;
    }
    k
}

/// Steklov spectrum of the disk of radius `radius` from the angular modes
/// `0 ≤ k ≤ k_max`.
///
/// Only the eigenvalues guaranteed complete are returned: every eigenvalue
/// of the disk not exceeding the largest mode-`(k_max)` lower branch value
/// `2μ(k_max − 1)/R` (higher modes only produce larger values). Zero modes:
/// the rotation (`k = 0`) and the two translations (lower branch of `k = 1`).
///
/// # Errors
/// [`EigenError::InvalidParameter`] for nonpositive radius or viscosity or
/// `k_max` outside `[1, MAX_DISK_MODE]`.
pub fn disk_mode_spectrum(radius: f64, mu: f64, k_max: usize) -> Result<Spectrum, EigenError> {
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(EigenError::InvalidParameter(format!("radius must be positive, got {radius}")));
    }
    if !(mu > 0.0 && mu.is_finite()) {
        return Err(EigenError::InvalidParameter(format!("viscosity must be positive, got {mu}")));
    }
    if k_max == 0 || k_max > MAX_DISK_MODE {
        return Err(EigenError::InvalidParameter(format!("k_max must lie in [1, {MAX_DISK_MODE}], got {k_max}")));
    }

    let mut entries = Vec::with_capacity(4 * k_max + 1);
    entries.push((0.0, ModeTag { fourier_index: Some(0), label: "k0:rotation".into(), multiplicity_hint: 1 }, 0));
    let mut max_asym: f64 = 0.0;
    let cutoff = |k: usize| 2.0 * mu * (k as f64 - 1.0) / radius;
    let limit = if k_max >= 2 { cutoff(k_max) * (1.0 + 1e-12) } else { 0.0 };
    for k in 1..=k_max {
        let m = mode_dtn_matrix(k, radius, mu);
        max_asym = max_asym.max((m[0][1] - m[1][0]).abs() / (m[0][0].abs() + m[1][1].abs()));
        let (lo, hi) = symmetric_pair(m);
        for (branch, value) in [(0u64, lo), (1, hi)] {
            // The translations are exact zeros; rounding would leave ~1e−16.
            let value = if k == 1 && branch == 0 { 0.0 } else { value };
            if value > limit {
                continue;
            }
            for family in 0..2u64 {
                let label = match (k, branch) {
                    (1, 0) => format!("k1:translation:{}", ["x", "y"][family as usize]),
                    _ => format!("k{k}:{}:{}", ["lower", "upper"][branch as usize], ["cos", "sin"][family as usize]),
                };
                let tag = ModeTag { fourier_index: Some(k as u32), label, multiplicity_hint: 2 };
                entries.push((value, tag, 4 * k as u64 + 2 * branch + family));
            }
        }
    }

    let mut parameters = BTreeMap::new();
    parameters.insert("radius".into(), radius);
    parameters.insert("mu".into(), mu);
    parameters.insert("k_max".into(), k_max as f64);
    let mut diagnostics = BTreeMap::new();
    diagnostics.insert("mode_matrix_asymmetry".into(), max_asym);
    diagnostics.insert("complete_below".into(), limit);
    Spectrum::from_unsorted(entries, SolverKind::DiskModes, parameters, diagnostics, Vec::new())
}

/// Disk spectrum with at least `count` eigenvalues, truncated to exactly
/// `count`.
///
/// # Errors
/// As [`disk_mode_spectrum`]; [`EigenError::InsufficientModes`] if `count`
/// exceeds what `MAX_DISK_MODE` modes supply.
pub fn disk_spectrum_with_count(radius: f64, mu: f64, count: usize) -> Result<Spectrum, EigenError> {
    if count == 0 {
        return Err(EigenError::InvalidParameter("eigenvalue count must be at least 1".into()));
    }
    if count > disk_mode_count(MAX_DISK_MODE) {
        return Err(EigenError::InsufficientModes { requested: count, available: disk_mode_count(MAX_DISK_MODE) });
    }
    let mut s = disk_mode_spectrum(radius, mu, disk_modes_for_count(count))?;
    s.truncate(count)?;
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mode_matrix_is_symmetric_with_closed_form() {
        for k in 1..8 {
            let m = mode_dtn_matrix(k, 1.0, 1.0);
            let kf = k as f64;
            assert!((m[0][0] - 2.0 * kf).abs() < 1e-12);
            assert!((m[1][1] - 2.0 * kf).abs() < 1e-12);
            assert!((m[0][1] + 2.0).abs() < 1e-12 && (m[1][0] + 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn counts() {
        assert_eq!(disk_mode_spectrum(1.0, 1.0, 10).unwrap().len(), disk_mode_count(10));
        assert_eq!(disk_mode_spectrum(1.0, 1.0, 1).unwrap().len(), 3);
        assert!(disk_mode_count(disk_modes_for_count(400)) >= 400);
    }
}

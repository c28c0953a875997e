//! Partial heat traces with tail estimates.

use serde::{Deserialize, Serialize};

use crate::HeatTraceError;

/// Default largest admissible ratio of the tail bound to the partial sum.
pub const DEFAULT_TAIL_FRACTION: f64 = 1e-8;

/// One evaluated heat-trace value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HeatTraceSample {
    /// Time `t > 0`.
    pub t: f64,
    /// Partial sum `Σ_{k≤K} e^{−tλ_k}`.
    pub value: f64,
    /// Estimate of the omitted `Σ_{k>K} e^{−tλ_k}`.
    pub tail_bound: f64,
    /// Number of eigenvalues summed.
    pub k_used: usize,
    /// Whether `tail_bound < tail_fraction · value`.
    pub usable: bool,
}

/// Options for [`partial_trace`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceOptions {
    /// Largest admissible ratio of the tail bound to the partial sum.
    pub tail_fraction: f64,
}

impl Default for TraceOptions {
    fn default() -> Self {
        Self { tail_fraction: DEFAULT_TAIL_FRACTION }
    }
}

/// `m` logarithmically spaced times in `[a, b]`.
///
/// # Errors
/// [`HeatTraceError::InvalidParameter`] unless `0 < a < b` and `m ≥ 2`.
pub fn log_grid(a: f64, b: f64, m: usize) -> Result<Vec<f64>, HeatTraceError> {
    if !(a > 0.0 && b > a && b.is_finite()) || m < 2 {
        return Err(HeatTraceError::InvalidParameter(format!(
            "log grid needs 0 < a < b and m ≥ 2, got [{a}, {b}], m = {m}"
        )));
    }
    let (la, lb) = (a.ln(), b.ln());
    Ok((0..m)
        .map(|i| match i {
            0 => a,
            _ if i == m - 1 => b,
            _ => (la + (lb - la) * i as f64 / (m - 1) as f64).exp(),
        })
        .collect())
}

/// Mean spacing of the largest eigenvalues: least-squares slope of `λ_k`
/// against `k` over the last decade (the last `max(10, K/10)`
/// eigenvalues).
/// Returns the slope with the last eigenvalue.
fn tail_slope(eigenvalues: &[f64]) -> Option<(f64, f64)> {
    let k = eigenvalues.len();
    if k < 2 {
        return None;
    }
    let m = (k / 10).max(10).min(k);
    let tail = &eigenvalues[k - m..];
    let xm = (m as f64 - 1.0) / 2.0;
    let ym = tail.iter().sum::<f64>() / m as f64;
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for (i, y) in tail.iter().enumerate() {
        let dx = i as f64 - xm;
        sxy += dx * (y - ym);
        sxx += dx * dx;
    }
    let slope = sxy / sxx;
    (slope > 0.0).then_some((slope, eigenvalues[k - 1]))
}

/// Evaluates the partial heat trace at each `t` by Neumaier-compensated
/// summation in ascending-λ order.
///
/// The tail `Σ_{k>K}` is bounded by continuing the last decade of the
/// spectrum linearly with its fitted slope `s`, starting conservatively at
/// the last computed eigenvalue, `λ_{K+j} ≈ λ_K + (j − 1)s` (a truncation
/// inside a multiplet leaves further copies of `λ_K`). This sums to the
/// geometric series `e^{−t λ_K}/(1 − e^{−ts})`. Spectra whose last decade has
/// no positive slope get an infinite tail bound; every such sample is
/// flagged unusable rather than silently accepted.
///
/// # Errors
/// [`HeatTraceError::InvalidParameter`] for an unsorted or empty spectrum,
/// or a nonpositive `t`.
pub fn partial_trace(
    eigenvalues: &[f64],
    t_grid: &[f64],
    options: &TraceOptions,
) -> Result<Vec<HeatTraceSample>, HeatTraceError> {
    if eigenvalues.is_empty() {
        return Err(HeatTraceError::InvalidParameter("empty spectrum".into()));
    }
    if eigenvalues.windows(2).any(|w| !(w[0] <= w[1])) {
        return Err(HeatTraceError::InvalidParameter("spectrum must be sorted ascending".into()));
    }
    let model = tail_slope(eigenvalues);
    t_grid
        .iter()
        .map(|&t| {
            if !(t > 0.0 && t.is_finite()) {
                return Err(HeatTraceError::InvalidParameter(format!("heat-trace time must be positive, got {t}")));
            }
            let (mut sum, mut comp) = (0.0_f64, 0.0_f64);
            for &l in eigenvalues {
                let x = (-t * l).exp();
                let s = sum + x;
                comp += if sum.abs() >= x.abs() { (sum - s) + x } else { (x - s) + sum };
                sum = s;
            }
            let value = sum + comp;
            let tail_bound = match model {
                Some((slope, last)) => (-t * last).exp() / (1.0 - (-t * slope).exp()),
                None => f64::INFINITY,
            };
            Ok(HeatTraceSample {
                t,
                value,
                tail_bound,
                k_used: eigenvalues.len(),
                usable: tail_bound < options.tail_fraction * value,
            })
        })
        .collect()
}

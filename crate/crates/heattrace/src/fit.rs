//! Least-squares fit of the two-term small-time expansion.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::trace::HeatTraceSample;
use crate::HeatTraceError;

/// Largest admissible condition number of the (column-equilibrated) normal
/// system.
pub const MAX_CONDITION: f64 = 1e12;

/// Minimum ratio `t_max / t_min` of the usable samples.
pub const MIN_SPAN: f64 = 5.0;

/// Options for [`fit_two_term`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitOptions {
    /// Space dimension `n`.
    pub n: usize,
    /// Include the `t log t` remainder basis function (only for `n = 2`).
    pub include_tlogt: bool,
}

/// Fitted expansion `Σ e^{−tλ_k} ≈ â₀ t^{1−n} + â₁ t^{2−n} (+ c t log t)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HeatTraceFit {
    /// Space dimension.
    pub n: usize,
    /// Leading coefficient.
    pub a0_hat: f64,
    /// Subleading coefficient (the constant term when `n = 2`).
    pub a1_hat: f64,
    /// Coefficient of `t log t`, when fitted.
    pub tlogt: Option<f64>,
    /// Standard errors of `(â₀, â₁)` from the residual variance (zero for
    /// an exactly determined fit).
    pub std_errors: [f64; 2],
    /// Euclidean norm of the residual vector.
    pub residual: f64,
    /// Residual norm relative to the data norm.
    pub relative_residual: f64,
    /// Times of the samples used.
    pub t_grid: Vec<f64>,
    /// Pointwise residuals, parallel to `t_grid`.
    pub residuals: Vec<f64>,
    /// Condition number of the equilibrated normal matrix.
    pub condition: f64,
    /// Samples dropped because their tail bound was too large.
    pub dropped_samples: usize,
}

/// Fits the expansion to the usable samples.
///
/// The design matrix has columns `t^{1−n}`, `t^{2−n}` and, for `n = 2` with
/// `include_tlogt`, `t log t`. Columns are scaled to unit norm before the
/// condition check so that the check measures linear dependence of the
/// basis on the grid rather than its units; the solve uses an SVD.
///
/// # Errors
/// [`HeatTraceError::InsufficientSamples`] for fewer usable samples than
/// `max(3, #basis)` or a span below [`MIN_SPAN`];
/// [`HeatTraceError::IllConditioned`] above [`MAX_CONDITION`];
/// [`HeatTraceError::InvalidParameter`] for `n < 2` or `t log t` with `n ≠ 2`.
pub fn fit_two_term(samples: &[HeatTraceSample], options: &FitOptions) -> Result<HeatTraceFit, HeatTraceError> {
    let n = options.n;
    if n < 2 {
        return Err(HeatTraceError::InvalidParameter(format!("dimension must be at least 2, got {n}")));
    }
    if options.include_tlogt && n != 2 {
        return Err(HeatTraceError::InvalidParameter("the t log t remainder applies only to n = 2".into()));
    }
    let used: Vec<&HeatTraceSample> = samples.iter().filter(|s| s.usable).collect();
    let p = if options.include_tlogt { 3 } else { 2 };
    if used.len() < p.max(3) {
        return Err(HeatTraceError::InsufficientSamples(format!(
            "{} usable samples of {}, need at least {}",
            used.len(),
            samples.len(),
            p.max(3)
        )));
    }
    let tmin = used.iter().map(|s| s.t).fold(f64::INFINITY, f64::min);
    let tmax = used.iter().map(|s| s.t).fold(0.0, f64::max);
    if tmax / tmin < MIN_SPAN {
        return Err(HeatTraceError::InsufficientSamples(format!(
            "usable samples span t ∈ [{tmin}, {tmax}], a factor {:.3} < {MIN_SPAN}",
            tmax / tmin
        )));
    }

    let m = used.len();
    let basis = |t: f64, j: usize| match j {
        0 => t.powi(1 - n as i32),
        1 => t.powi(2 - n as i32),
        _ => t * t.ln(),
    };
    let mut a = DMatrix::from_fn(m, p, |i, j| basis(used[i].t, j));
    let y = DVector::from_iterator(m, used.iter().map(|s| s.value));
    let scales: Vec<f64> = (0..p).map(|j| a.column(j).norm()).collect();
    for (j, s) in scales.iter().enumerate() {
        a.column_mut(j).scale_mut(1.0 / s);
    }
    let svd = a.clone().svd(true, true);
    let smax = svd.singular_values.max();
    let smin = svd.singular_values.min();
    let condition = if smin > 0.0 { (smax / smin).powi(2) } else { f64::INFINITY };
    if !(condition <= MAX_CONDITION) {
        return Err(HeatTraceError::IllConditioned { condition, limit: MAX_CONDITION });
    }
    let scaled =
        svd.solve(&y, 0.0).map_err(|e| HeatTraceError::InvalidParameter(format!("least-squares solve failed: {e}")))?;
    let coef: Vec<f64> = (0..p).map(|j| scaled[j] / scales[j]).collect();
    let fitted = &a * &scaled;
    let resid: Vec<f64> = (0..m).map(|i| y[i] - fitted[i]).collect();
    let residual = resid.iter().map(|r| r * r).sum::<f64>().sqrt();

    // Covariance σ²(AᵀA)⁻¹ in the scaled variables, σ² = RSS/(m − p).
    let std_errors = if m > p {
        let sigma2 = residual * residual / (m - p) as f64;
        let gram = a.transpose() * &a;
        let inv = gram.try_inverse().ok_or(HeatTraceError::IllConditioned { condition, limit: MAX_CONDITION })?;
        [(sigma2 * inv[(0, 0)]).sqrt() / scales[0], (sigma2 * inv[(1, 1)]).sqrt() / scales[1]]
    } else {
        [0.0, 0.0]
    };
    Ok(HeatTraceFit {
        n,
        a0_hat: coef[0],
        a1_hat: coef[1],
        tlogt: options.include_tlogt.then(|| coef[2]),
        std_errors,
        residual,
        relative_residual: residual / y.norm(),
        t_grid: used.iter().map(|s| s.t).collect(),
        residuals: resid,
        condition,
        dropped_samples: samples.len() - m,
    })
}

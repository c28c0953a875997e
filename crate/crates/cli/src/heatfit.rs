//! The `heat-fit` command: spectrum → heat trace → fit → geometry.

use serde::{Deserialize, Serialize};
use stokes_eigensolver::Spectrum;
use stokes_heattrace::{
    fit_two_term, invert_geometry, partial_trace, FitOptions, FitReport, HeatTraceFit, HeatTraceSample, TraceOptions,
};
use stokes_symbols::MuConvention;

use crate::config::{LoadedConfig, SolverConfig, TimeUnits, SCHEMA_VERSION};
use crate::error::CliError;
use crate::output::{csv_bytes, json_bytes, Artifact};
use crate::spectrum::compute_spectrum;

/// Fit of one spectrum on one time grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceFit {
    pub samples: Vec<HeatTraceSample>,
    pub fit: HeatTraceFit,
    pub report: FitReport,
}

/// Everything the spectrum side produces at one viscosity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumSide {
    pub viscosity: f64,
    pub eigenvalue_count: usize,
    pub zero_modes: usize,
    pub lambda_max: f64,
    pub trace: TraceFit,
}

/// Samples the heat trace of `eigenvalues` at `times`, fits it and inverts
/// the fit for constant viscosity `mu`.
///
/// # Errors
/// [`CliError::Numerical`] with stage `heat_trace`, `fit` or `inversion`.
pub fn fit_spectrum(
    eigenvalues: &[f64],
    times: &[f64],
    mu: f64,
    loaded: &LoadedConfig,
    convention: MuConvention,
) -> Result<TraceFit, CliError> {
    let fit_cfg = loaded.config.fit;
    let samples = partial_trace(eigenvalues, times, &TraceOptions { tail_fraction: fit_cfg.tail_fraction })
        .map_err(|e| CliError::numerical("heat_trace", e))?;
    let fit = fit_two_term(&samples, &FitOptions { n: 2, include_tlogt: fit_cfg.include_tlogt })
        .map_err(|e| CliError::numerical("fit", e))?;
    let geometry = invert_geometry(&fit, mu, convention).map_err(|e| CliError::numerical("inversion", e))?;
    let report = FitReport::new(&fit, &geometry);
    Ok(TraceFit { samples, fit, report })
}

/// Solves, samples and fits at viscosity `mu` on the configured grid.
///
/// # Errors
/// As [`compute_spectrum`] and [`fit_spectrum`].
pub fn spectrum_side(
    loaded: &LoadedConfig,
    mu: f64,
    convention: MuConvention,
) -> Result<(Spectrum, SpectrumSide), CliError> {
    let grid = loaded.config.t_grid.ok_or_else(|| CliError::config("t_grid", "missing"))?;
    let spectrum = compute_spectrum(loaded, mu)?;
    let trace = fit_spectrum(&spectrum.eigenvalues, &grid.times(mu)?, mu, loaded, convention)?;
    let side = SpectrumSide {
        viscosity: mu,
        eigenvalue_count: spectrum.len(),
        zero_modes: spectrum.zero_modes,
        lambda_max: spectrum.eigenvalues.last().copied().unwrap_or(0.0),
        trace,
    };
    Ok((spectrum, side))
}

/// Output of the `heat-fit` command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HeatFitReport {
    pub schema_version: u32,
    pub command: String,
    pub domain: String,
    pub solver: Option<SolverConfig>,
    pub convention: MuConvention,
    pub time_units: TimeUnits,
    pub spectrum_side: SpectrumSide,
}

/// The sampled trace as a CSV table.
///
/// # Errors
/// [`CliError::Numerical`] (stage `output`) on formatting failure.
pub fn trace_csv(samples: &[HeatTraceSample]) -> Result<Vec<u8>, CliError> {
    use std::io::Write;
    csv_bytes(|buf| {
        let err = |e: std::io::Error| CliError::numerical("output", e);
        writeln!(buf, "t,value,tail_bound,k_used,usable").map_err(err)?;
        for s in samples {
            writeln!(buf, "{:.17e},{:.17e},{:.17e},{},{}", s.t, s.value, s.tail_bound, s.k_used, s.usable)
                .map_err(err)?;
        }
        Ok(())
    })
}

/// Runs the command: `heat_fit.json` and `heat_trace.csv`.
///
/// # Errors
/// As [`spectrum_side`].
pub fn run_heat_fit(loaded: &LoadedConfig, convention: MuConvention) -> Result<Vec<Artifact>, CliError> {
    let mu = loaded.constant_viscosity()?;
    let (_, side) = spectrum_side(loaded, mu, convention)?;
    let csv = trace_csv(&side.trace.samples)?;
    let report = HeatFitReport {
        schema_version: SCHEMA_VERSION,
        command: loaded.config.command.name().to_owned(),
        domain: loaded.domain.label().to_owned(),
        solver: loaded.config.solver.clone(),
        convention,
        time_units: loaded.config.t_grid.map(|g| g.units).unwrap_or_default(),
        spectrum_side: side,
    };
    Ok(vec![Artifact::new("heat_fit.json", json_bytes(&report)?), Artifact::new("heat_trace.csv", csv)])
}

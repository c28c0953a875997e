//! The `spectrum` command.

use serde_json::json;
use stokes_eigensolver::{
    circle_radius, disk_mode_spectrum, galerkin_spectrum, mfs_dtn, solve, Method, MfsOptions, Spectrum, SpectrumRequest,
};

use crate::config::{LoadedConfig, SolverConfig, SCHEMA_VERSION};
use crate::error::CliError;
use crate::output::{csv_bytes, json_bytes, Artifact};

fn method(solver: &SolverConfig) -> Method {
    match *solver {
        SolverConfig::DiskModes { k_max } => Method::DiskModes { k_max },
        SolverConfig::GalerkinPoly { degree } => Method::GalerkinPoly { degree },
        SolverConfig::Mfs { n_sources, n_collocation, offset, rank_tolerance } => Method::Mfs(MfsOptions {
            n_sources,
            n_collocation,
            offset,
            rank_tolerance,
            keep_basis: false,
            ..MfsOptions::default()
        }),
    }
}

/// Solves for the spectrum of the configured domain at constant viscosity
/// `mu`, truncated to `count` when given.
///
/// # Errors
/// [`CliError::Config`] when the disk solver is asked for an unbounded
/// spectrum; [`CliError::Numerical`] (stage `spectrum`) for solver failures.
pub fn compute_spectrum(loaded: &LoadedConfig, mu: f64) -> Result<Spectrum, CliError> {
    let solver = loaded.config.solver.as_ref().ok_or_else(|| CliError::config("solver", "missing"))?;
    let stage = |e: stokes_eigensolver::EigenError| CliError::numerical("spectrum", e);
    match loaded.config.count {
        Some(count) => {
            let request = SpectrumRequest { domain: loaded.domain.clone(), mu, method: method(solver), count };
            solve(&request).map_err(stage)
        }
        None => match method(solver) {
            Method::DiskModes { k_max: Some(k) } => {
                disk_mode_spectrum(circle_radius(&loaded.domain).map_err(stage)?, mu, k).map_err(stage)
            }
            Method::DiskModes { k_max: None } => {
                Err(CliError::config("count", "required by the disk solver when `solver.k_max` is omitted"))
            }
            Method::GalerkinPoly { degree } => {
                galerkin_spectrum(&loaded.domain, mu, degree).map(|s| s.spectrum).map_err(stage)
            }
            Method::Mfs(options) => mfs_dtn(&loaded.domain, mu, &options).map(|s| s.spectrum).map_err(stage),
        },
    }
}

/// Runs the command: `spectrum.csv` and the `spectrum.json` sidecar.
///
/// # Errors
/// As [`compute_spectrum`].
pub fn run_spectrum(loaded: &LoadedConfig) -> Result<Vec<Artifact>, CliError> {
    let mu = loaded.constant_viscosity()?;
    let spectrum = compute_spectrum(loaded, mu)?;
    let csv = csv_bytes(|w| spectrum.write_csv(w).map_err(|e| CliError::numerical("output", e)))?;
    let sidecar = json!({
        "schema_version": SCHEMA_VERSION,
        "command": loaded.config.command.name(),
        "domain": loaded.domain.label(),
        "viscosity": mu,
        "solver_config": loaded.config.solver,
        "requested_count": loaded.config.count,
        "spectrum": spectrum.sidecar(),
        "lambda_max": spectrum.eigenvalues.last(),
    });
    Ok(vec![Artifact::new("spectrum.csv", csv), Artifact::new("spectrum.json", json_bytes(&sidecar)?)])
}

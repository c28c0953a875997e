//! Config-driven experiments on the Stokes Dirichlet-to-Neumann map.
//!
//! A JSON [`ExperimentConfig`] names a domain file, a solver and the
//! analysis to run. Four commands are available:
//!
//! - `spectrum`: eigenvalues as CSV plus a JSON sidecar of solver diagnostics;
//! - `invariants`: the symbol-side heat coefficients `a₀`, `a₁` under both
//!   viscosity conventions, with their densities along the boundary;
//! - `heat-fit`: spectrum, partial heat trace, two-term fit and the inverted
//!   perimeter and curvature;
//! - `audit`: the heat fit against the symbol side, with relative errors,
//!   convention adjudication and pass/fail checks.
//!
//! Outputs are assembled in memory and written afterwards in a fixed order.
//! Nothing is random and all maps are ordered, so a rerun reproduces every
//! output byte for byte.

// `!(x > y)` is used deliberately so that NaN fails range checks.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod audit;
pub mod config;
mod error;
pub mod heatfit;
pub mod invariants;
pub mod output;
pub mod spectrum;

use std::path::PathBuf;

use stokes_symbols::MuConvention;

pub use config::{CommandKind, ExperimentConfig, LoadedConfig, SCHEMA_VERSION};
pub use error::{CliError, EXIT_ACCEPTANCE, EXIT_CONFIG, EXIT_NUMERICAL, EXIT_OK};
pub use output::Artifact;

/// Command-line overrides of the config.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RunOptions {
    /// Output directory (overrides `outputs.directory`).
    pub out_dir: Option<PathBuf>,
    /// Viscosity convention (overrides `conventions.mu`).
    pub convention: Option<MuConvention>,
}

/// What a run produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutcome {
    pub files: Vec<PathBuf>,
    /// For audits: whether every check passed.
    pub audit_passed: Option<bool>,
}

impl RunOutcome {
    /// Process exit code: [`EXIT_ACCEPTANCE`] for a failed audit, else
    /// [`EXIT_OK`].
    #[must_use]
    pub fn exit_code(&self) -> i32 {
        if self.audit_passed == Some(false) {
            EXIT_ACCEPTANCE
        } else {
            EXIT_OK
        }
    }
}

/// Runs the configured command without writing anything.
///
/// # Errors
/// Stage-tagged [`CliError`]s.
pub fn execute(loaded: &LoadedConfig, convention: MuConvention) -> Result<(Vec<Artifact>, Option<bool>), CliError> {
    match loaded.config.command {
        CommandKind::Spectrum => spectrum::run_spectrum(loaded).map(|a| (a, None)),
        CommandKind::Invariants => invariants::run_invariants(loaded, convention).map(|a| (a, None)),
        CommandKind::HeatFit => heatfit::run_heat_fit(loaded, convention).map(|a| (a, None)),
        CommandKind::Audit => audit::run_audit(loaded, convention).map(|(a, passed)| (a, Some(passed))),
    }
}

/// Runs a loaded config and writes its outputs.
///
/// # Errors
/// [`CliError::Config`] if no output directory is given; otherwise as
/// [`execute`] and [`output::write_artifacts`].
pub fn run(loaded: &LoadedConfig, options: &RunOptions) -> Result<RunOutcome, CliError> {
    let out_dir = match (&options.out_dir, &loaded.config.outputs.directory) {
        (Some(dir), _) => dir.clone(),
        (None, Some(dir)) => loaded.base_dir.join(dir),
        (None, None) => {
            return Err(CliError::config("outputs.directory", "no output directory: pass --out or set this field"))
        }
    };
    let convention = options.convention.unwrap_or(loaded.config.conventions.mu);
    let (artifacts, audit_passed) = execute(loaded, convention)?;
    let files = output::write_artifacts(&out_dir, &loaded.config.outputs.prefix, &artifacts)?;
    Ok(RunOutcome { files, audit_passed })
}

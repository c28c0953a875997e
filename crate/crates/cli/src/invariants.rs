//! The `invariants` command: symbol-side heat coefficients.

use serde::{Deserialize, Serialize};
use stokes_geometry::{curve_jet, perimeter, total_weighted_curvature, BoundaryJet, PlanarDomain, ViscositySpec};
use stokes_symbols::{
    a0_density, a1_density_with_index, assemble_coefficient_numeric, Coefficient, IndexConvention, MuConvention,
    PipelineOptions,
};

use crate::config::{LoadedConfig, SCHEMA_VERSION};
use crate::error::CliError;
use crate::output::{json_bytes, Artifact};

/// A value under each viscosity convention.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConventionPair {
    pub paper: f64,
    pub carried: f64,
}

impl ConventionPair {
    /// Evaluates `f` under both conventions.
    ///
    /// # Errors
    /// The first error returned by `f`.
    pub fn try_from_fn<E>(mut f: impl FnMut(MuConvention) -> Result<f64, E>) -> Result<Self, E> {
        Ok(Self { paper: f(MuConvention::Paper)?, carried: f(MuConvention::Carried)? })
    }

    /// The value under `convention`.
    #[must_use]
    pub fn get(&self, convention: MuConvention) -> f64 {
        match convention {
            MuConvention::Paper => self.paper,
            MuConvention::Carried => self.carried,
        }
    }
}

/// Both densities at one boundary point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensitySample {
    /// Curve parameter in `[0, 2π)`.
    pub s: f64,
    pub x: f64,
    pub y: f64,
    pub kappa: f64,
    pub mu: f64,
    pub dmu_dnu: f64,
    /// `|γ′(s)|`, the arclength weight of the parameter.
    pub speed: f64,
    pub a0_density: ConventionPair,
    pub a1_density: ConventionPair,
}

/// Both densities of an explicitly configured jet.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JetDensity {
    pub n: usize,
    pub kappa: Vec<f64>,
    pub mu: f64,
    pub dmu_dnu: f64,
    pub a0_density: ConventionPair,
    pub a1_density: ConventionPair,
}

/// Output of the `invariants` command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InvariantsReport {
    pub schema_version: u32,
    pub command: String,
    pub domain: String,
    pub convention: MuConvention,
    pub index_convention: IndexConvention,
    pub quadrature_points: usize,
    pub perimeter: f64,
    /// `∮ κ ds`.
    pub total_curvature: f64,
    pub a0: ConventionPair,
    pub a1: ConventionPair,
    /// The coefficients through the full numeric symbol pipeline, if requested.
    pub a0_numeric: Option<ConventionPair>,
    pub a1_numeric: Option<ConventionPair>,
    pub densities: Vec<DensitySample>,
    pub jets: Vec<JetDensity>,
}

fn symbols(e: impl std::fmt::Display) -> CliError {
    CliError::numerical("symbols", e)
}

fn densities(jet: &BoundaryJet, index: IndexConvention) -> Result<(ConventionPair, ConventionPair), CliError> {
    let a0 = ConventionPair::try_from_fn(|c| a0_density(jet.dim(), jet.mu(), c)).map_err(symbols)?;
    let a1 = ConventionPair::try_from_fn(|c| Ok::<_, CliError>(a1_density_with_index(jet, c, index)))?;
    Ok((a0, a1))
}

/// Closed-form `(a₀, a₁)` under both conventions by the periodic trapezoid
/// rule on `n_quad` nodes.
///
/// # Errors
/// [`CliError::Numerical`] (stage `symbols`) for jet or density failures.
pub fn closed_form_coefficients(
    domain: &PlanarDomain,
    visc: &ViscositySpec,
    index: IndexConvention,
    n_quad: usize,
) -> Result<(ConventionPair, ConventionPair), CliError> {
    let h = std::f64::consts::TAU / n_quad as f64;
    let mut a0 = ConventionPair { paper: 0.0, carried: 0.0 };
    let mut a1 = a0;
    for i in 0..n_quad {
        let s = i as f64 * h;
        let jet = curve_jet(domain, visc, s).map_err(symbols)?;
        let (d0, d1) = densities(&jet, index)?;
        let w = h * domain.speed(s);
        a0.paper += w * d0.paper;
        a0.carried += w * d0.carried;
        a1.paper += w * d1.paper;
        a1.carried += w * d1.carried;
    }
    Ok((a0, a1))
}

/// Computes the report of the `invariants` command.
///
/// # Errors
/// [`CliError::Numerical`] (stage `symbols`) for any failing evaluation.
pub fn compute_invariants(loaded: &LoadedConfig, convention: MuConvention) -> Result<InvariantsReport, CliError> {
    let cfg = &loaded.config.invariants;
    let index = loaded.config.conventions.index;
    let (domain, visc) = (&loaded.domain, &loaded.viscosity);
    let n_quad = cfg.quadrature_points;
    let (a0, a1) = closed_form_coefficients(domain, visc, index, n_quad)?;
    let (a0_numeric, a1_numeric) = if cfg.numeric {
        let opts =
            PipelineOptions { radial_nodes: cfg.radial_nodes, index_convention: index, ..PipelineOptions::default() };
        let numeric = |which| {
            ConventionPair::try_from_fn(|c| assemble_coefficient_numeric(domain, visc, which, c, &opts, n_quad))
                .map_err(symbols)
        };
        (Some(numeric(Coefficient::A0)?), Some(numeric(Coefficient::A1)?))
    } else {
        (None, None)
    };

    let m = cfg.density_samples;
    let mut samples = Vec::with_capacity(m);
    for i in 0..m {
        let s = std::f64::consts::TAU * i as f64 / m as f64;
        let jet = curve_jet(domain, visc, s).map_err(symbols)?;
        let (a0_density, a1_density) = densities(&jet, index)?;
        let [x, y] = domain.point(s);
        samples.push(DensitySample {
            s,
            x,
            y,
            kappa: domain.curvature(s),
            mu: jet.mu(),
            dmu_dnu: jet.dmu_dnu(),
            speed: domain.speed(s),
            a0_density,
            a1_density,
        });
    }

    let mut jets = Vec::with_capacity(cfg.jets.len());
    for spec in &cfg.jets {
        let jet = BoundaryJet::adapted(&spec.kappa, spec.mu, spec.dmu_dnu, &[]).map_err(symbols)?;
        let (a0_density, a1_density) = densities(&jet, index)?;
        jets.push(JetDensity {
            n: jet.dim(),
            kappa: spec.kappa.clone(),
            mu: spec.mu,
            dmu_dnu: spec.dmu_dnu,
            a0_density,
            a1_density,
        });
    }

    let total_curvature = total_weighted_curvature(domain, visc, 0, n_quad).map_err(symbols)?;

    Ok(InvariantsReport {
        schema_version: SCHEMA_VERSION,
        command: loaded.config.command.name().to_owned(),
        domain: domain.label().to_owned(),
        convention,
        index_convention: index,
        quadrature_points: n_quad,
        perimeter: perimeter(domain, n_quad),
        total_curvature,
        a0,
        a1,
        a0_numeric,
        a1_numeric,
        densities: samples,
        jets,
    })
}

/// Runs the command: `invariants.json`.
///
/// # Errors
/// As [`compute_invariants`].
pub fn run_invariants(loaded: &LoadedConfig, convention: MuConvention) -> Result<Vec<Artifact>, CliError> {
    let report = compute_invariants(loaded, convention)?;
    Ok(vec![Artifact::new("invariants.json", json_bytes(&report)?)])
}

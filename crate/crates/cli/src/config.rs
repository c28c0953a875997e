//! Experiment configuration: the JSON schema and its validation.
//!
//! Every field is checked before any computation starts. Parse errors and
//! range violations alike are reported as [`CliError::Config`] with the dotted
//! path of the offending field.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use stokes_eigensolver::{MfsOptions, MAX_DISK_MODE, MAX_GALERKIN_DEGREE};
use stokes_geometry::{DomainFile, PlanarDomain, ValidationOptions, ViscositySpec, DEFAULT_QUADRATURE_POINTS};
use stokes_heattrace::log_grid;
use stokes_symbols::{IndexConvention, MuConvention};

use crate::error::CliError;

/// The only schema version this build understands.
pub const SCHEMA_VERSION: u32 = 1;

/// Experiment to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CommandKind {
    /// Eigenvalues to CSV plus a JSON sidecar.
    Spectrum,
    /// Symbol-side heat coefficients and their boundary densities.
    Invariants,
    /// Spectrum, heat trace, two-term fit and geometric inversion.
    HeatFit,
    /// Heat fit compared against the symbol side, with pass/fail checks.
    Audit,
}

impl CommandKind {
    /// Name as written in configs.
    #[must_use]
    pub fn name(self) -> &'static str {
        match self {
            Self::Spectrum => "spectrum",
            Self::Invariants => "invariants",
            Self::HeatFit => "heat-fit",
            Self::Audit => "audit",
        }
    }
}

fn default_offset() -> f64 {
    MfsOptions::default().offset
}

fn default_rank_tolerance() -> f64 {
    MfsOptions::default().rank_tolerance
}

/// Eigensolver selection, tagged by `method`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "snake_case", deny_unknown_fields)]
pub enum SolverConfig {
    /// Exact Fourier modes (circles only).
    DiskModes {
        /// Largest angular index; omitted means "enough for `count`".
        #[serde(default)]
        k_max: Option<usize>,
    },
    /// Divergence-free polynomial Galerkin.
    GalerkinPoly { degree: usize },
    /// Method of fundamental solutions.
    Mfs {
        n_sources: usize,
        #[serde(default)]
        n_collocation: Option<usize>,
        #[serde(default = "default_offset")]
        offset: f64,
        #[serde(default = "default_rank_tolerance")]
        rank_tolerance: f64,
    },
}

/// Units of the time grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TimeUnits {
    /// Grid values are the times `t` themselves.
    #[default]
    Absolute,
    /// Grid values are `μt`; the sampled times are `value / μ`. Spectra scale
    /// linearly in μ, so this keeps the sampled window fixed relative to the
    /// spectrum when μ changes.
    Viscous,
}

/// Logarithmic time grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeGrid {
    pub min: f64,
    pub max: f64,
    pub points: usize,
    #[serde(default)]
    pub units: TimeUnits,
}

impl TimeGrid {
    /// Sampled times for viscosity `mu`.
    ///
    /// # Errors
    /// [`CliError::Config`] for a grid that fails the range checks.
    pub fn times(&self, mu: f64) -> Result<Vec<f64>, CliError> {
        let scale = match self.units {
            TimeUnits::Absolute => 1.0,
            TimeUnits::Viscous => 1.0 / mu,
        };
        log_grid(scale * self.min, scale * self.max, self.points).map_err(|e| CliError::config("t_grid", e.to_string()))
    }
}

/// Heat-trace fit settings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct FitConfig {
    /// Add a `t log t` column to the design matrix.
    pub include_tlogt: bool,
    /// Largest admissible tail-bound to partial-sum ratio.
    pub tail_fraction: f64,
}

impl Default for FitConfig {
    fn default() -> Self {
        Self { include_tlogt: false, tail_fraction: stokes_heattrace::DEFAULT_TAIL_FRACTION }
    }
}

/// Convention switches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ConventionConfig {
    /// Whether the viscosity factor of the principal symbol is carried into
    /// the resolvent.
    pub mu: MuConvention,
    /// Sign of the normal derivative of the inverse metric.
    pub index: IndexConvention,
}

/// An explicit boundary jet whose densities are reported.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JetConfig {
    /// Principal curvatures (`n − 1` of them, `n ∈ {2, 3}`).
    pub kappa: Vec<f64>,
    pub mu: f64,
    #[serde(default)]
    pub dmu_dnu: f64,
}

/// Settings of the `invariants` command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct InvariantsConfig {
    /// Trapezoid nodes for the boundary integrals.
    pub quadrature_points: usize,
    /// Boundary points at which densities are tabulated.
    pub density_samples: usize,
    /// Also evaluate the coefficients by the full numeric symbol pipeline.
    pub numeric: bool,
    /// Gauss–Laguerre nodes of the numeric pipeline.
    pub radial_nodes: usize,
    /// Extra jets evaluated on their own.
    pub jets: Vec<JetConfig>,
}

impl Default for InvariantsConfig {
    fn default() -> Self {
        Self {
            quadrature_points: DEFAULT_QUADRATURE_POINTS,
            density_samples: 64,
            numeric: false,
            radial_nodes: 32,
            jets: Vec::new(),
        }
    }
}

/// Audit tolerances; an omitted (or `null`) tolerance disables its check.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Tolerances {
    /// `|â₀ − a₀| / a₀`.
    pub a0_relative: Option<f64>,
    /// `|â₁ − a₁|`.
    pub a1_absolute: Option<f64>,
    /// `|â₁ − a₁| / |a₁|`.
    pub a1_relative: Option<f64>,
    /// Inverted perimeter against the quadrature perimeter, relative.
    pub perimeter_relative: Option<f64>,
    /// `|â₁(μ′) − â₁(μ)|` for every compared viscosity μ′.
    pub constant_term_absolute: Option<f64>,
    /// `N(Λ)/(a₀Λ) − 1` in absolute value, at `weyl_lambda`.
    pub weyl_relative: Option<f64>,
}

/// Settings of the `audit` command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct AuditConfig {
    pub tolerances: Tolerances,
    /// Further viscosities at which spectrum and fit are repeated.
    pub compare_viscosities: Vec<f64>,
    /// Spectral cut-off Λ of the counting-function check.
    pub weyl_lambda: Option<f64>,
    /// Trapezoid nodes for the symbol side and the reference perimeter.
    pub quadrature_points: usize,
}

impl Default for AuditConfig {
    fn default() -> Self {
        Self {
            tolerances: Tolerances::default(),
            compare_viscosities: Vec::new(),
            weyl_lambda: None,
            quadrature_points: DEFAULT_QUADRATURE_POINTS,
        }
    }
}

/// Where outputs go.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputConfig {
    /// Output directory, relative to the config file; `--out` overrides it.
    pub directory: Option<PathBuf>,
    /// Prefix prepended to every output file name.
    pub prefix: String,
}

fn yes() -> bool {
    true
}

/// A complete experiment description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub schema_version: u32,
    pub command: CommandKind,
    /// Domain file, relative to the config file.
    pub domain: PathBuf,
    /// Constant viscosity overriding the one in the domain file.
    #[serde(default)]
    pub viscosity: Option<f64>,
    #[serde(default)]
    pub solver: Option<SolverConfig>,
    /// Number of eigenvalues (including the zero modes).
    #[serde(default)]
    pub count: Option<usize>,
    #[serde(default)]
    pub t_grid: Option<TimeGrid>,
    #[serde(default)]
    pub fit: FitConfig,
    #[serde(default)]
    pub conventions: ConventionConfig,
    #[serde(default)]
    pub invariants: InvariantsConfig,
    #[serde(default)]
    pub audit: AuditConfig,
    #[serde(default)]
    pub outputs: OutputConfig,
    /// Must be `true`: nothing in the pipeline is random.
    #[serde(default = "yes")]
    pub deterministic: bool,
}

/// A validated configuration with its domain loaded.
#[derive(Debug, Clone)]
pub struct LoadedConfig {
    pub config: ExperimentConfig,
    /// Directory of the config file; relative paths resolve against it.
    pub base_dir: PathBuf,
    pub domain: PlanarDomain,
    pub viscosity: ViscositySpec,
}

impl LoadedConfig {
    /// The constant viscosity required by the eigensolvers.
    ///
    /// # Errors
    /// [`CliError::Config`] if the viscosity varies along the boundary.
    pub fn constant_viscosity(&self) -> Result<f64, CliError> {
        self.viscosity.as_constant().ok_or_else(|| {
            CliError::config(
                "viscosity",
                format!(
                    "command `{}` needs a constant viscosity; set `viscosity` or use a domain file with constant `mu`",
                    self.config.command.name()
                ),
            )
        })
    }
}

fn positive(field: &str, value: f64) -> Result<(), CliError> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(CliError::config(field, format!("must be positive and finite, got {value}")))
    }
}

fn at_least(field: &str, value: usize, min: usize) -> Result<(), CliError> {
    if value >= min {
        Ok(())
    } else {
        Err(CliError::config(field, format!("must be at least {min}, got {value}")))
    }
}

fn tolerance(field: &str, value: Option<f64>) -> Result<(), CliError> {
    value.map_or(Ok(()), |v| positive(field, v))
}

impl ExperimentConfig {
    /// Parses a config, naming the offending field on failure.
    ///
    /// # Errors
    /// [`CliError::Config`] for malformed JSON, unknown or missing fields and
    /// wrongly typed values.
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let mut de = serde_json::Deserializer::from_str(text);
        let parsed: Self = serde_path_to_error::deserialize(&mut de).map_err(|e| {
            let path = e.path().to_string();
            let field = if path == "." { "<root>".to_owned() } else { path };
            CliError::config(field, e.inner().to_string())
        })?;
        de.end().map_err(|e| CliError::config("<root>", e.to_string()))?;
        Ok(parsed)
    }

    /// Checks every parameter range and the command-specific requirements.
    ///
    /// # Errors
    /// [`CliError::Config`] naming the first offending field.
    pub fn validate(&self) -> Result<(), CliError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(CliError::config(
                "schema_version",
                format!("unsupported version {}, expected {SCHEMA_VERSION}", self.schema_version),
            ));
        }
        if !self.deterministic {
            return Err(CliError::config("deterministic", "must be true: the pipeline has no random components"));
        }
        if self.domain.as_os_str().is_empty() {
            return Err(CliError::config("domain", "path is empty"));
        }
        if let Some(mu) = self.viscosity {
            positive("viscosity", mu)?;
        }
        if let Some(solver) = &self.solver {
            validate_solver(solver)?;
        }
        if let Some(count) = self.count {
            at_least("count", count, 1)?;
        }
        if let Some(grid) = &self.t_grid {
            positive("t_grid.min", grid.min)?;
            positive("t_grid.max", grid.max)?;
            if !(grid.max > grid.min) {
                return Err(CliError::config("t_grid.max", format!("must exceed t_grid.min = {}", grid.min)));
            }
            at_least("t_grid.points", grid.points, 3)?;
        }
        let tail = self.fit.tail_fraction;
        if !(tail > 0.0 && tail < 1.0) {
            return Err(CliError::config("fit.tail_fraction", format!("must lie in (0, 1), got {tail}")));
        }
        self.validate_invariants()?;
        self.validate_audit()?;
        if self.outputs.prefix.contains(['/', '\\']) {
            return Err(CliError::config("outputs.prefix", "must not contain path separators"));
        }
        let needs_spectrum = matches!(self.command, CommandKind::Spectrum | CommandKind::HeatFit | CommandKind::Audit);
        if needs_spectrum && self.solver.is_none() {
            return Err(CliError::config("solver", format!("required by command `{}`", self.command.name())));
        }
        if matches!(self.command, CommandKind::HeatFit | CommandKind::Audit) {
            if self.count.is_none() {
                return Err(CliError::config("count", format!("required by command `{}`", self.command.name())));
            }
            if self.t_grid.is_none() {
                return Err(CliError::config("t_grid", format!("required by command `{}`", self.command.name())));
            }
        }
        Ok(())
    }

    fn validate_invariants(&self) -> Result<(), CliError> {
        let inv = &self.invariants;
        at_least("invariants.quadrature_points", inv.quadrature_points, 8)?;
        at_least("invariants.density_samples", inv.density_samples, 1)?;
        at_least("invariants.radial_nodes", inv.radial_nodes, 2)?;
        for (i, jet) in inv.jets.iter().enumerate() {
            if !(1..=2).contains(&jet.kappa.len()) {
                return Err(CliError::config(
                    format!("invariants.jets[{i}].kappa"),
                    format!("needs 1 or 2 curvatures (n = 2 or 3), got {}", jet.kappa.len()),
                ));
            }
            if let Some(k) = jet.kappa.iter().find(|k| !k.is_finite()) {
                return Err(CliError::config(format!("invariants.jets[{i}].kappa"), format!("non-finite value {k}")));
            }
            positive(&format!("invariants.jets[{i}].mu"), jet.mu)?;
            if !jet.dmu_dnu.is_finite() {
                return Err(CliError::config(format!("invariants.jets[{i}].dmu_dnu"), "must be finite"));
            }
        }
        Ok(())
    }

    fn validate_audit(&self) -> Result<(), CliError> {
        let audit = &self.audit;
        let tol = &audit.tolerances;
        tolerance("audit.tolerances.a0_relative", tol.a0_relative)?;
        tolerance("audit.tolerances.a1_absolute", tol.a1_absolute)?;
        tolerance("audit.tolerances.a1_relative", tol.a1_relative)?;
        tolerance("audit.tolerances.perimeter_relative", tol.perimeter_relative)?;
        tolerance("audit.tolerances.constant_term_absolute", tol.constant_term_absolute)?;
        tolerance("audit.tolerances.weyl_relative", tol.weyl_relative)?;
        for (i, mu) in audit.compare_viscosities.iter().enumerate() {
            positive(&format!("audit.compare_viscosities[{i}]"), *mu)?;
        }
        if let Some(l) = audit.weyl_lambda {
            positive("audit.weyl_lambda", l)?;
        }
        if tol.weyl_relative.is_some() && audit.weyl_lambda.is_none() {
            return Err(CliError::config("audit.weyl_lambda", "required when audit.tolerances.weyl_relative is set"));
        }
        if tol.constant_term_absolute.is_some() && audit.compare_viscosities.is_empty() {
            return Err(CliError::config(
                "audit.compare_viscosities",
                "must be non-empty when audit.tolerances.constant_term_absolute is set",
            ));
        }
        at_least("audit.quadrature_points", audit.quadrature_points, 8)
    }

    /// Reads, parses, validates and loads the domain of a config file.
    ///
    /// # Errors
    /// [`CliError::Io`] if a file cannot be read; [`CliError::Config`] for
    /// any invalid field, including a domain file that fails validation.
    pub fn load(path: &Path) -> Result<LoadedConfig, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })?;
        let config = Self::from_json(&text)?;
        let base_dir = path.parent().map_or_else(|| PathBuf::from("."), Path::to_path_buf);
        config.resolve(base_dir)
    }

    /// Validates the config and loads its domain relative to `base_dir`.
    ///
    /// # Errors
    /// As [`ExperimentConfig::load`].
    pub fn resolve(self, base_dir: PathBuf) -> Result<LoadedConfig, CliError> {
        self.validate()?;
        let domain_path = base_dir.join(&self.domain);
        if !domain_path.is_file() {
            return Err(CliError::config("domain", format!("file {} does not exist", domain_path.display())));
        }
        let text = std::fs::read_to_string(&domain_path)
            .map_err(|e| CliError::Io { path: domain_path.display().to_string(), message: e.to_string() })?;
        let file = DomainFile::from_json(&text).map_err(|e| CliError::config("domain", e.to_string()))?;
        let (domain, file_visc) =
            file.into_parts(&ValidationOptions::default()).map_err(|e| CliError::config("domain", e.to_string()))?;
        let viscosity = self.viscosity.map_or(file_visc, ViscositySpec::Constant);
        let loaded = LoadedConfig { config: self, base_dir, domain, viscosity };
        if matches!(loaded.config.command, CommandKind::Spectrum | CommandKind::HeatFit | CommandKind::Audit) {
            loaded.constant_viscosity()?;
        }
        Ok(loaded)
    }
}

fn validate_solver(solver: &SolverConfig) -> Result<(), CliError> {
    match solver {
        SolverConfig::DiskModes { k_max } => {
            if let Some(k) = k_max {
                if !(1..=MAX_DISK_MODE).contains(k) {
                    return Err(CliError::config("solver.k_max", format!("must lie in 1..={MAX_DISK_MODE}, got {k}")));
                }
            }
        }
        SolverConfig::GalerkinPoly { degree } => {
            if !(1..=MAX_GALERKIN_DEGREE).contains(degree) {
                return Err(CliError::config(
                    "solver.degree",
                    format!("must lie in 1..={MAX_GALERKIN_DEGREE}, got {degree}"),
                ));
            }
        }
        SolverConfig::Mfs { n_sources, n_collocation, offset, rank_tolerance } => {
            at_least("solver.n_sources", *n_sources, 4)?;
            if let Some(nc) = n_collocation {
                at_least("solver.n_collocation", *nc, *n_sources)?;
            }
            positive("solver.offset", *offset)?;
            if !(*rank_tolerance > 0.0 && *rank_tolerance < 1.0) {
                return Err(CliError::config(
                    "solver.rank_tolerance",
                    format!("must lie in (0, 1), got {rank_tolerance}"),
                ));
            }
        }
    }
    Ok(())
}

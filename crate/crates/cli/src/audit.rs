//! The `audit` command: spectrum-side fits against symbol-side coefficients.

use serde::{Deserialize, Serialize};
use stokes_geometry::{perimeter, total_weighted_curvature, ViscositySpec};
use stokes_symbols::{IndexConvention, MuConvention};

use crate::config::{LoadedConfig, SolverConfig, TimeUnits, SCHEMA_VERSION};
use crate::error::CliError;
use crate::heatfit::{fit_spectrum, spectrum_side, SpectrumSide};
use crate::invariants::{closed_form_coefficients, ConventionPair};
use crate::output::{json_bytes, Artifact};

/// Predictions of the two conventions closer than this (relative) cannot be
/// told apart by any measurement.
const INDISTINGUISHABLE: f64 = 1e-9;

/// Symbol-side coefficients at one constant viscosity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SymbolSide {
    pub viscosity: f64,
    pub a0: ConventionPair,
    pub a1: ConventionPair,
    /// Quadrature perimeter of the domain.
    pub perimeter: f64,
    /// `∮ κ ds` by quadrature.
    pub total_curvature: f64,
}

/// Discrepancies between the fit and the symbol side.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AuditErrors {
    pub a0_relative: ConventionPair,
    pub a1_absolute: ConventionPair,
    pub a1_relative: ConventionPair,
    /// Perimeter inverted under the selected convention, against quadrature.
    pub perimeter_relative: f64,
}

/// The leading pair of a fit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitSummary {
    pub a0_hat: f64,
    pub a1_hat: f64,
}

/// The spectrum side repeated at another viscosity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ViscosityComparison {
    pub viscosity: f64,
    pub spectrum_side: SpectrumSide,
    pub symbol_side: SymbolSide,
    /// `â₁(μ′) − â₁(μ)` on the configured grid.
    pub constant_term_difference: f64,
    /// The fit at exactly the reference times (meaningful when the grid is in
    /// viscous units, where the configured grid moves with μ).
    pub reference_time_fit: Option<FitSummary>,
    /// Why `reference_time_fit` is missing, if it is.
    pub reference_time_fit_error: Option<String>,
}

/// Which viscosity convention the spectrum supports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Paper,
    Carried,
    /// The two conventions predict the same values for every viscosity used.
    Indistinguishable,
}

/// Convention adjudication for one coefficient.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConventionVerdict {
    /// What was compared: `absolute` values or `viscosity_dependence`
    /// (differences against the reference viscosity, which cancel any
    /// fit bias common to all viscosities).
    pub basis: String,
    pub paper_discrepancy: f64,
    pub carried_discrepancy: f64,
    pub matches: Verdict,
}

/// Adjudication of both coefficients.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Adjudication {
    pub a0: ConventionVerdict,
    pub a1: ConventionVerdict,
}

/// Counting-function check against the leading coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeylCheck {
    pub lambda: f64,
    pub count: usize,
    /// `N(Λ)/Λ`.
    pub ratio: f64,
    /// Symbol-side `a₀` under the selected convention: the predicted slope.
    pub predicted_slope: f64,
    pub relative_error: f64,
}

/// One pass/fail line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl Check {
    fn new(name: impl Into<String>, value: f64, tolerance: f64) -> Self {
        Self { name: name.into(), value, tolerance, passed: value.abs() <= tolerance }
    }
}

/// Output of the `audit` command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    pub schema_version: u32,
    pub command: String,
    pub domain: String,
    pub solver: Option<SolverConfig>,
    pub convention: MuConvention,
    pub index_convention: IndexConvention,
    pub time_units: TimeUnits,
    pub spectrum_side: SpectrumSide,
    pub symbol_side: SymbolSide,
    pub errors: AuditErrors,
    pub comparisons: Vec<ViscosityComparison>,
    pub weyl: Option<WeylCheck>,
    pub adjudication: Adjudication,
    pub checks: Vec<Check>,
    pub passed: bool,
}

fn symbol_side(loaded: &LoadedConfig, mu: f64) -> Result<SymbolSide, CliError> {
    let n_quad = loaded.config.audit.quadrature_points;
    let visc = ViscositySpec::Constant(mu);
    let (a0, a1) = closed_form_coefficients(&loaded.domain, &visc, loaded.config.conventions.index, n_quad)?;
    let total_curvature =
        total_weighted_curvature(&loaded.domain, &visc, 0, n_quad).map_err(|e| CliError::numerical("symbols", e))?;
    Ok(SymbolSide { viscosity: mu, a0, a1, perimeter: perimeter(&loaded.domain, n_quad), total_curvature })
}

fn relative(value: f64, reference: f64) -> f64 {
    (value - reference).abs() / reference.abs()
}

fn verdict(basis: &str, paper: f64, carried: f64, distinguishable: bool) -> ConventionVerdict {
    let matches = if !distinguishable {
        Verdict::Indistinguishable
    } else if paper < carried {
        Verdict::Paper
    } else {
        Verdict::Carried
    };
    ConventionVerdict { basis: basis.to_owned(), paper_discrepancy: paper, carried_discrepancy: carried, matches }
}

fn differ(pair: &ConventionPair) -> bool {
    (pair.paper - pair.carried).abs() > INDISTINGUISHABLE * pair.paper.abs().max(pair.carried.abs()).max(1.0)
}

fn adjudicate(reference: (&SpectrumSide, &SymbolSide), comparisons: &[ViscosityComparison]) -> Adjudication {
    let points: Vec<(&SpectrumSide, &SymbolSide)> =
        std::iter::once(reference).chain(comparisons.iter().map(|c| (&c.spectrum_side, &c.symbol_side))).collect();

    let mut a0 = (0.0_f64, 0.0_f64);
    let mut a0_distinct = false;
    for (spec, sym) in &points {
        let hat = spec.trace.fit.a0_hat;
        a0.0 = a0.0.max(relative(hat, sym.a0.paper));
        a0.1 = a0.1.max(relative(hat, sym.a0.carried));
        a0_distinct |= differ(&sym.a0);
    }

    let (ref_spec, ref_sym) = reference;
    let a1 = if comparisons.is_empty() {
        let hat = ref_spec.trace.fit.a1_hat;
        verdict("absolute", (hat - ref_sym.a1.paper).abs(), (hat - ref_sym.a1.carried).abs(), differ(&ref_sym.a1))
    } else {
        let mut d = (0.0_f64, 0.0_f64);
        let mut distinct = false;
        for c in comparisons {
            let measured = c.constant_term_difference;
            let predicted = ConventionPair {
                paper: c.symbol_side.a1.paper - ref_sym.a1.paper,
                carried: c.symbol_side.a1.carried - ref_sym.a1.carried,
            };
            d.0 = d.0.max((measured - predicted.paper).abs());
            d.1 = d.1.max((measured - predicted.carried).abs());
            distinct |= differ(&predicted);
        }
        verdict("viscosity_dependence", d.0, d.1, distinct)
    };
    Adjudication { a0: verdict("absolute", a0.0, a0.1, a0_distinct), a1 }
}

/// Computes the audit report.
///
/// # Errors
/// Any stage failure, tagged by stage.
pub fn compute_audit(loaded: &LoadedConfig, convention: MuConvention) -> Result<AuditReport, CliError> {
    let mu = loaded.constant_viscosity()?;
    let audit = &loaded.config.audit;
    let grid = loaded.config.t_grid.ok_or_else(|| CliError::config("t_grid", "missing"))?;
    let (spectrum, side) = spectrum_side(loaded, mu, convention)?;
    let symbols = symbol_side(loaded, mu)?;

    let fit = &side.trace.fit;
    let errors = AuditErrors {
        a0_relative: ConventionPair {
            paper: relative(fit.a0_hat, symbols.a0.paper),
            carried: relative(fit.a0_hat, symbols.a0.carried),
        },
        a1_absolute: ConventionPair {
            paper: (fit.a1_hat - symbols.a1.paper).abs(),
            carried: (fit.a1_hat - symbols.a1.carried).abs(),
        },
        a1_relative: ConventionPair {
            paper: relative(fit.a1_hat, symbols.a1.paper),
            carried: relative(fit.a1_hat, symbols.a1.carried),
        },
        perimeter_relative: relative(side.trace.report.perimeter_est, symbols.perimeter),
    };

    let reference_times = grid.times(mu)?;
    let mut comparisons = Vec::with_capacity(audit.compare_viscosities.len());
    for &other in &audit.compare_viscosities {
        let (other_spectrum, other_side) = spectrum_side(loaded, other, convention)?;
        let (reference_time_fit, reference_time_fit_error) =
            match fit_spectrum(&other_spectrum.eigenvalues, &reference_times, other, loaded, convention) {
                Ok(t) => (Some(FitSummary { a0_hat: t.fit.a0_hat, a1_hat: t.fit.a1_hat }), None),
                Err(e) => (None, Some(e.to_string())),
            };
        comparisons.push(ViscosityComparison {
            viscosity: other,
            constant_term_difference: other_side.trace.fit.a1_hat - fit.a1_hat,
            spectrum_side: other_side,
            symbol_side: symbol_side(loaded, other)?,
            reference_time_fit,
            reference_time_fit_error,
        });
    }

    let weyl = match audit.weyl_lambda {
        Some(lambda) => {
            if spectrum.eigenvalues.last().map_or(true, |l| *l <= lambda) {
                return Err(CliError::Numerical {
                    stage: "weyl",
                    message: format!(
                        "largest computed eigenvalue {:?} does not exceed audit.weyl_lambda = {lambda}; raise count",
                        spectrum.eigenvalues.last()
                    ),
                });
            }
            let count = spectrum.counting(lambda);
            let ratio = count as f64 / lambda;
            let predicted_slope = symbols.a0.get(convention);
            Some(WeylCheck { lambda, count, ratio, predicted_slope, relative_error: relative(ratio, predicted_slope) })
        }
        None => None,
    };

    let adjudication = adjudicate((&side, &symbols), &comparisons);

    let tol = &audit.tolerances;
    let mut checks = Vec::new();
    if let Some(t) = tol.a0_relative {
        checks.push(Check::new("a0_relative", errors.a0_relative.get(convention), t));
    }
    if let Some(t) = tol.a1_absolute {
        checks.push(Check::new("a1_absolute", errors.a1_absolute.get(convention), t));
    }
    if let Some(t) = tol.a1_relative {
        checks.push(Check::new("a1_relative", errors.a1_relative.get(convention), t));
    }
    if let Some(t) = tol.perimeter_relative {
        checks.push(Check::new("perimeter_relative", errors.perimeter_relative, t));
    }
    if let Some(t) = tol.constant_term_absolute {
        for c in &comparisons {
            checks.push(Check::new(
                format!("constant_term_absolute[mu={}]", c.viscosity),
                c.constant_term_difference,
                t,
            ));
        }
    }
    if let (Some(t), Some(w)) = (tol.weyl_relative, &weyl) {
        checks.push(Check::new("weyl_relative", w.relative_error, t));
    }
    let passed = checks.iter().all(|c| c.passed);

    Ok(AuditReport {
        schema_version: SCHEMA_VERSION,
        command: loaded.config.command.name().to_owned(),
        domain: loaded.domain.label().to_owned(),
        solver: loaded.config.solver.clone(),
        convention,
        index_convention: loaded.config.conventions.index,
        time_units: grid.units,
        spectrum_side: side,
        symbol_side: symbols,
        errors,
        comparisons,
        weyl,
        adjudication,
        checks,
        passed,
    })
}

/// Runs the command: `audit.json`. The report is produced whether or not
/// the checks pass; the flag tells the caller which.
///
/// # Errors
/// As [`compute_audit`].
pub fn run_audit(loaded: &LoadedConfig, convention: MuConvention) -> Result<(Vec<Artifact>, bool), CliError> {
    let report = compute_audit(loaded, convention)?;
    Ok((vec![Artifact::new("audit.json", json_bytes(&report)?)], report.passed))
}

//! Sorted eigenvalue lists with mode metadata, and their file formats.

use std::collections::BTreeMap;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::EigenError;

/// Default relative zero threshold: eigenvalues below
/// `ZERO_THRESHOLD_FACTOR · max(first 10 eigenvalues)` count as zero modes.
pub const ZERO_THRESHOLD_FACTOR: f64 = 1e-8;

/// Eigenvalues below `−NEGATIVE_TOLERANCE` (relative to the zero-threshold
/// scale) violate nonnegativity.
pub const NEGATIVE_TOLERANCE: f64 = 1e-8;

/// Which solver produced a spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolverKind {
    /// Exact per-mode solve on a disk.
    DiskModes,
    /// Divergence-free polynomial Galerkin method.
    GalerkinPoly,
    /// Method of fundamental solutions with Stokeslets.
    Mfs,
}

impl SolverKind {
    /// Name used in files and configs.
    #[must_use]
    pub fn name(self) -> &'static str {
        match self {
            Self::DiskModes => "disk_modes",
            Self::GalerkinPoly => "galerkin_poly",
            Self::Mfs => "mfs",
        }
    }

    /// Parses [`SolverKind::name`].
    #[must_use]
    pub fn parse(text: &str) -> Option<Self> {
        match text {
            "disk_modes" => Some(Self::DiskModes),
            "galerkin_poly" => Some(Self::GalerkinPoly),
            "mfs" => Some(Self::Mfs),
            _ => None,
        }
    }
}

/// Metadata attached to one eigenvalue.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModeTag {
    /// Angular Fourier index, when the solver separates modes.
    pub fourier_index: Option<u32>,
    /// Free-form label (branch, rigid-motion name, ordinal).
    pub label: String,
    /// Expected multiplicity of the eigenvalue (2 for paired cos/sin modes).
    pub multiplicity_hint: usize,
}

/// Sorted Steklov eigenvalues `λ₁ ≤ λ₂ ≤ …` with provenance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    /// Eigenvalues in ascending order.
    pub eigenvalues: Vec<f64>,
    /// Per-eigenvalue metadata, parallel to `eigenvalues`.
    pub modes: Vec<ModeTag>,
    /// Number of eigenvalues below `zero_threshold`.
    pub zero_modes: usize,
    /// Absolute threshold used for zero-mode counting.
    pub zero_threshold: f64,
    /// Producing solver.
    pub solver: SolverKind,
    /// Discretization parameters.
    pub parameters: BTreeMap<String, f64>,
    /// Numerical diagnostics (conditioning, asymmetry, …).
    pub diagnostics: BTreeMap<String, f64>,
    /// Non-fatal warnings raised while solving.
    pub warnings: Vec<String>,
}

impl Spectrum {
    /// Sorts `(λ, tag, tie-break key)` triples ascending (ties broken by the
    /// key, for reproducibility), counts zero modes and checks
    /// nonnegativity.
    ///
    /// # Errors
    /// [`EigenError::Conditioning`] if an eigenvalue is negative beyond
    /// tolerance.
    pub fn from_unsorted(
        mut entries: Vec<(f64, ModeTag, u64)>,
        solver: SolverKind,
        parameters: BTreeMap<String, f64>,
        diagnostics: BTreeMap<String, f64>,
        warnings: Vec<String>,
    ) -> Result<Self, EigenError> {
        entries.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.2.cmp(&b.2)));
        let eigenvalues: Vec<f64> = entries.iter().map(|e| e.0).collect();
        let scale = eigenvalues.iter().take(10).copied().fold(0.0, f64::max);
        let zero_threshold = ZERO_THRESHOLD_FACTOR * scale;
        if let Some(&min) = eigenvalues.first() {
            if min < -NEGATIVE_TOLERANCE * scale.max(1.0) {
                return Err(EigenError::Conditioning {
                    stage: "spectrum",
                    detail: format!("negative eigenvalue {min:e} of a nonnegative operator"),
                });
            }
        }
        let zero_modes = eigenvalues.iter().filter(|l| **l < zero_threshold).count();
        Ok(Self {
            eigenvalues,
            modes: entries.into_iter().map(|e| e.1).collect(),
            zero_modes,
            zero_threshold,
            solver,
            parameters,
            diagnostics,
            warnings,
        })
    }

    /// Number of eigenvalues.
    #[must_use]
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Whether the spectrum is empty.
    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    /// Eigenvalues above the zero threshold, ascending.
    #[must_use]
    pub fn positive(&self) -> &[f64] {
        &self.eigenvalues[self.zero_modes..]
    }

    /// Counting function `N(λ) = #{k : λ_k ≤ λ}`.
    #[must_use]
    pub fn counting(&self, lambda: f64) -> usize {
        self.eigenvalues.partition_point(|l| *l <= lambda)
    }

    /// The first `k` eigenvalues.
    ///
    /// # Errors
    /// [`EigenError::InsufficientModes`] if fewer are available.
    pub fn first(&self, k: usize) -> Result<&[f64], EigenError> {
        if k > self.len() {
            return Err(EigenError::InsufficientModes { requested: k, available: self.len() });
        }
        Ok(&self.eigenvalues[..k])
    }

    /// Keeps only the first `k` eigenvalues.
    ///
    /// # Errors
    /// [`EigenError::InsufficientModes`] if fewer are available.
    pub fn truncate(&mut self, k: usize) -> Result<(), EigenError> {
        if k > self.len() {
            return Err(EigenError::InsufficientModes { requested: k, available: self.len() });
        }
        self.eigenvalues.truncate(k);
        self.modes.truncate(k);
        self.zero_modes = self.zero_modes.min(k);
        Ok(())
    }

    /// Writes the CSV table `index,lambda,multiplicity_hint,mode_tag,solver`
    /// (1-based index, full-precision eigenvalues).
    ///
    /// # Errors
    /// [`EigenError::Output`] on I/O failure.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), EigenError> {
        let mut w = csv::Writer::from_writer(out);
        let err = |e: csv::Error| EigenError::Output(e.to_string());
        w.write_record(["index", "lambda", "multiplicity_hint", "mode_tag", "solver"]).map_err(err)?;
        for (i, (l, m)) in self.eigenvalues.iter().zip(&self.modes).enumerate() {
            w.write_record([
                (i + 1).to_string(),
                format!("{l:.17e}"),
                m.multiplicity_hint.to_string(),
                m.label.clone(),
                self.solver.name().to_string(),
            ])
            .map_err(err)?;
        }
        w.flush().map_err(|e| EigenError::Output(e.to_string()))
    }

    /// JSON sidecar: solver, parameters, diagnostics, warnings and counts
    /// (eigenvalues themselves live in the CSV).
    #[must_use]
    pub fn sidecar(&self) -> serde_json::Value {
        serde_json::json!({
            "solver": self.solver.name(),
            "count": self.len(),
            "zero_modes": self.zero_modes,
            "zero_threshold": self.zero_threshold,
            "parameters": self.parameters,
            "diagnostics": self.diagnostics,
            "warnings": self.warnings,
        })
    }
}

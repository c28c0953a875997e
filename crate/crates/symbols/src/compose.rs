//! Graded symbols and the asymptotic composition formula
//!
//! ```text
//!   (a ∘ b)(x, ξ) ∼ Σ_ϑ (−i)^{|ϑ|}/ϑ! ∂_ξ^ϑ a(x, ξ) ∂_x^ϑ b(x, ξ),
//! ```
//!
//! i.e. `Σ_ϑ (1/ϑ!) ∂_ξ^ϑ a · D_x^ϑ b` with `D = −i∂`.
//!
//! Derivatives are taken by Richardson-extrapolated central differences, so
//! evaluators only need to be smooth near the evaluation point.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::context::DerivativeSteps;
use crate::error::SymbolError;
use crate::matrix::{richardson, richardson_mixed, richardson_second, CMatrix};

/// Evaluator `(x′, ξ′) ↦` matrix of one homogeneous term.
pub type SymbolEvaluator = Arc<dyn Fn(&[f64], &[f64]) -> CMatrix + Send + Sync>;

/// Largest number of orders below the principal one that [`compose`]
/// computes.
pub const MAX_COMPOSITION_ORDER: usize = 2;

/// One term of a graded symbol, homogeneous of `degree` in ξ′.
#[derive(Clone)]
pub struct HomogeneousTerm {
    /// Homogeneity degree.
    pub degree: i32,
    /// Evaluator of the term.
    pub eval: SymbolEvaluator,
}

impl fmt::Debug for HomogeneousTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HomogeneousTerm").field("degree", &self.degree).finish_non_exhaustive()
    }
}

/// A symbol `Σ_j p_{m−j}` given by its homogeneous terms, in strictly
/// decreasing degree.
///
/// `truncation` is the lowest degree down to which the listed terms are
/// complete; `None` means the listed terms are the whole symbol (for
/// instance a differential operator).
#[derive(Clone, Debug)]
pub struct AsymptoticSymbol {
    size: usize,
    terms: Vec<HomogeneousTerm>,
    truncation: Option<i32>,
}

impl AsymptoticSymbol {
    /// Empty symbol of `size × size` matrices.
    #[must_use]
    pub fn new(size: usize, truncation: Option<i32>) -> Self {
        Self { size, terms: Vec::new(), truncation }
    }

    /// Single-term symbol.
    #[must_use]
    pub fn homogeneous(size: usize, degree: i32, eval: SymbolEvaluator) -> Self {
        Self { size, terms: vec![HomogeneousTerm { degree, eval }], truncation: None }
    }

    /// Identity symbol of degree 0.
    #[must_use]
    pub fn identity(size: usize) -> Self {
        Self::homogeneous(size, 0, Arc::new(move |_: &[f64], _: &[f64]| CMatrix::identity(size, size)))
    }

    /// Appends a term of lower degree than all existing ones.
    ///
    /// # Errors
    /// [`SymbolError::InvalidParameter`] if the degree does not decrease.
    pub fn push(&mut self, degree: i32, eval: SymbolEvaluator) -> Result<(), SymbolError> {
        if let Some(last) = self.terms.last() {
            if degree >= last.degree {
                return Err(SymbolError::InvalidParameter(format!(
                    "term degrees must strictly decrease: {degree} after {}",
                    last.degree
                )));
            }
        }
        self.terms.push(HomogeneousTerm { degree, eval });
        Ok(())
    }

    /// Matrix size.
    #[must_use]
    pub fn size(&self) -> usize {
        self.size
    }

    /// Homogeneous terms, highest degree first.
    #[must_use]
    pub fn terms(&self) -> &[HomogeneousTerm] {
        &self.terms
    }

    /// Lowest complete degree (`None` for an exact finite sum).
    #[must_use]
    pub fn truncation(&self) -> Option<i32> {
        self.truncation
    }

    /// Degree of the principal term.
    #[must_use]
    pub fn principal_degree(&self) -> Option<i32> {
        self.terms.first().map(|t| t.degree)
    }

    /// Term of the given degree, if present.
    #[must_use]
    pub fn term(&self, degree: i32) -> Option<&HomogeneousTerm> {
        self.terms.iter().find(|t| t.degree == degree)
    }

    /// Value of the degree-`degree` term (zero if absent).
    #[must_use]
    pub fn eval_term(&self, degree: i32, x: &[f64], xi: &[f64]) -> CMatrix {
        self.term(degree).map_or_else(|| CMatrix::zeros(self.size, self.size), |t| (t.eval)(x, xi))
    }
}

/// Multi-indices `ϑ` with `|ϑ| ≤ order` over `d` variables, as sorted lists
/// of variable indices (`[a]` = ∂_a, `[a, b]` = ∂_a∂_b).
fn multi_indices(d: usize, order: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    if order >= 1 {
        out.extend((0..d).map(|a| vec![a]));
    }
    if order >= 2 {
        for a in 0..d {
            for b in a..d {
                out.push(vec![a, b]);
            }
        }
    }
    out
}

/// `(−i)^{|ϑ|}/ϑ!`.
fn weight(theta: &[usize]) -> Complex64 {
    let factorial = if theta.len() == 2 && theta[0] == theta[1] { 2.0 } else { 1.0 };
    Complex64::new(0.0, -1.0).powu(theta.len() as u32) / factorial
}

/// Partial derivative `∂^ϑ f` at `at` along the multi-index `theta`.
fn partial(f: &dyn Fn(&[f64]) -> CMatrix, at: &[f64], theta: &[usize], h: f64) -> CMatrix {
    let shift = |moves: &[(usize, f64)]| {
        let mut p = at.to_vec();
        for (a, d) in moves {
            p[*a] += d;
        }
        f(&p)
    };
    match theta {
        [] => f(at),
        [a] => richardson(|d| shift(&[(*a, d)]), h),
        [a, b] if a == b => richardson_second(|d| shift(&[(*a, d)]), 100.0 * h),
        [a, b] => richardson_mixed(|d, e| shift(&[(*a, d), (*b, e)]), 100.0 * h),
        _ => unreachable!("multi-indices have length at most 2"),
    }
}

/// Graded composition of `a` and `b`, keeping the principal degree and the
/// `order` degrees below it.
///
/// The degree-`d` term of the result is
/// `Σ (−i)^{|ϑ|}/ϑ! ∂_ξ^ϑ a_{d_a} ∂_x^ϑ b_{d_b}` over `d_a + d_b − |ϑ| = d`.
/// The top term is the exact product of the principal symbols.
///
/// # Errors
/// * [`SymbolError::DimensionMismatch`] for different matrix sizes;
/// * [`SymbolError::UnsupportedOrder`] for `order > 2`, or when a factor's
///   truncation does not reach the requested degree.
pub fn compose(
    a: &AsymptoticSymbol,
    b: &AsymptoticSymbol,
    order: usize,
    steps: DerivativeSteps,
) -> Result<AsymptoticSymbol, SymbolError> {
    if a.size != b.size {
        return Err(SymbolError::DimensionMismatch(format!(
            "cannot compose {0}×{0} with {1}×{1} symbols",
            a.size, b.size
        )));
    }
    if order > MAX_COMPOSITION_ORDER {
        return Err(SymbolError::UnsupportedOrder { requested: order, max: MAX_COMPOSITION_ORDER });
    }
    let (Some(top_a), Some(top_b)) = (a.principal_degree(), b.principal_degree()) else {
        return Ok(AsymptoticSymbol::new(a.size, None));
    };
    let top = top_a + top_b;
    let lowest = top - order as i32;
    let mut reach = i32::MIN;
    if let Some(t) = a.truncation {
        reach = reach.max(t + top_b);
    }
    if let Some(t) = b.truncation {
        reach = reach.max(t + top_a);
    }
    if reach > lowest {
        return Err(SymbolError::UnsupportedOrder { requested: order, max: (top - reach).max(0) as usize });
    }

    let mut out = AsymptoticSymbol::new(a.size, Some(lowest));
    for degree in (lowest..=top).rev() {
        let mut parts = Vec::new();
        for ta in &a.terms {
            for tb in &b.terms {
                let k = ta.degree + tb.degree - degree;
                if (0..=order as i32).contains(&k) {
                    parts.push((ta.eval.clone(), tb.eval.clone(), k as usize));
                }
            }
        }
        if parts.is_empty() {
            continue;
        }
        let size = a.size;
        let eval: SymbolEvaluator = Arc::new(move |x: &[f64], xi: &[f64]| {
            let mut sum = CMatrix::zeros(size, size);
            let d = xi.len();
            let nxi = xi.iter().map(|v| v * v).sum::<f64>().sqrt().max(f64::MIN_POSITIVE);
            let hxi = steps.xi_relative * nxi;
            let hx = steps.x_relative;
            for (left, right, k) in &parts {
                for theta in multi_indices(d, *k).into_iter().filter(|t| t.len() == *k) {
                    let da = partial(&|p: &[f64]| left(x, p), xi, &theta, hxi);
                    let db = partial(&|p: &[f64]| right(p, xi), x, &theta, hx);
                    sum += da * db * weight(&theta);
                }
            }
            sum
        });
        out.terms.push(HomogeneousTerm { degree, eval });
    }
    Ok(out)
}

//! Matrix values of homogeneous symbols.

use nalgebra::DMatrix;
use num_complex::Complex64;

/// Complex dense matrix.
pub type CMatrix = DMatrix<Complex64>;

/// Which symbol a [`SymbolMatrix`] holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SymbolFamily {
    B1,
    B0,
    C2,
    C1,
    C0,
    Q1,
    Q0,
    QMinus1,
    A1,
    A2,
    E1,
    E0,
    Psi1,
    Psi0,
    VarpiMinus1,
    VarpiMinus2,
    /// Output of a generic composition.
    Composed,
}

impl SymbolFamily {
    /// Homogeneity degree in ξ′ (jointly in (ξ′, τ) for the resolvent family),
    /// `None` for generic compositions.
    #[must_use]
    pub fn degree(self) -> Option<i32> {
        use SymbolFamily::*;
        match self {
            C2 => Some(2),
            B1 | C1 | Q1 | A1 | A2 | E1 | Psi1 => Some(1),
            B0 | C0 | Q0 | E0 | Psi0 => Some(0),
            QMinus1 | VarpiMinus1 => Some(-1),
            VarpiMinus2 => Some(-2),
            Composed => None,
        }
    }
}

/// Value of a homogeneous symbol at one `(x′, ξ′[, τ])`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolMatrix {
    /// Matrix entries.
    pub matrix: CMatrix,
    /// Homogeneity degree.
    pub degree: i32,
    /// Symbol tag.
    pub family: SymbolFamily,
}

impl SymbolMatrix {
    pub(crate) fn new(matrix: CMatrix, family: SymbolFamily) -> Self {
        let degree = family.degree().expect("named families have a degree");
        debug_assert!(matrix.iter().all(|z| z.re.is_finite() && z.im.is_finite()), "{family:?} has non-finite entries");
        Self { matrix, degree, family }
    }

    /// Zero-based entry `(i, j)`.
    #[must_use]
    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.matrix[(i, j)]
    }

    /// Largest entry modulus.
    #[must_use]
    pub fn max_abs(&self) -> f64 {
        self.matrix.iter().fold(0.0, |m, z| m.max(z.norm()))
    }

    /// Whether every entry is finite.
    #[must_use]
    pub fn is_finite(&self) -> bool {
        self.matrix.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Matrix trace.
    #[must_use]
    pub fn trace(&self) -> Complex64 {
        self.matrix.trace()
    }
}

pub(crate) fn zeros(n: usize) -> CMatrix {
    CMatrix::zeros(n, n)
}

pub(crate) fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

pub(crate) fn real(v: f64) -> Complex64 {
    Complex64::new(v, 0.0)
}

pub(crate) const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Central difference of `f` at 0 with step `h`, one Richardson extrapolation
/// (error `O(h⁴)`).
pub(crate) fn richardson(f: impl Fn(f64) -> CMatrix, h: f64) -> CMatrix {
    let d = |h: f64| (f(h) - f(-h)) / real(2.0 * h);
    let coarse = d(h);
    let fine = d(0.5 * h);
    (fine * real(4.0) - coarse) / real(3.0)
}

/// Second central difference of `f` at 0, one Richardson extrapolation.
pub(crate) fn richardson_second(f: impl Fn(f64) -> CMatrix, h: f64) -> CMatrix {
    let f0 = f(0.0);
    let d = |h: f64| (f(h) - &f0 * real(2.0) + f(-h)) / real(h * h);
    let coarse = d(h);
    let fine = d(0.5 * h);
    (fine * real(4.0) - coarse) / real(3.0)
}

/// Mixed second central difference `∂²f/∂a∂b` at 0 for `f(a, b)`.
pub(crate) fn richardson_mixed(f: impl Fn(f64, f64) -> CMatrix, h: f64) -> CMatrix {
    let d = |h: f64| (f(h, h) - f(h, -h) - f(-h, h) + f(-h, -h)) / real(4.0 * h * h);
    let coarse = d(h);
    let fine = d(0.5 * h);
    (fine * real(4.0) - coarse) / real(3.0)
}

//! One-dimensional quadrature rules shared by the boundary, interior and
//! cotangent-space integrals.

use std::f64::consts::PI;

/// Nodes and weights of a quadrature rule.
#[derive(Debug, Clone, PartialEq)]
pub struct Rule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl Rule {
    /// Applies the rule to `f`.
    pub fn integrate(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }

    /// Affinely maps a rule on `[−1, 1]` to `[a, b]`.
    #[must_use]
    pub fn mapped(&self, a: f64, b: f64) -> Self {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        Self {
            nodes: self.nodes.iter().map(|x| mid + half * x).collect(),
            weights: self.weights.iter().map(|w| half * w).collect(),
        }
    }
}

/// Periodic trapezoid rule on `[0, 2π)` with `m` nodes.
#[must_use]
pub fn periodic_trapezoid(m: usize) -> Rule {
    let h = std::f64::consts::TAU / m as f64;
    Rule { nodes: (0..m).map(|i| i as f64 * h).collect(), weights: vec![h; m] }
}

/// Gauss–Legendre rule on `[−1, 1]` with `m` nodes (exact for polynomials of
/// degree `2m − 1`), computed by Newton iteration on the three-term
/// recurrence.
#[must_use]
pub fn gauss_legendre(m: usize) -> Rule {
    assert!(m >= 1, "Gauss–Legendre rule needs at least one node");
    let mut nodes = vec![0.0; m];
    let mut weights = vec![0.0; m];
    let mf = m as f64;
    for i in 0..m.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (mf + 0.5)).cos();
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(m, x);
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative(m, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[m - 1 - i] = x;
        weights[i] = w;
        weights[m - 1 - i] = w;
    }
    Rule { nodes, weights }
}

fn legendre_with_derivative(m: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if m == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=m {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let mf = m as f64;
    (p1, mf * (x * p1 - p0) / (x * x - 1.0))
}

/// Gauss–Laguerre rule for `∫₀^∞ e^{−x} f(x) dx` with `m` nodes, by Newton
/// iteration from the classical asymptotic initial guesses.
#[must_use]
pub fn gauss_laguerre(m: usize) -> Rule {
    assert!(m >= 1, "Gauss–Laguerre rule needs at least one node");
    let mut nodes = vec![0.0; m];
    let mut weights = vec![0.0; m];
    let mf = m as f64;
    let mut z: f64 = 0.0;
    for i in 0..m {
        z = match i {
            0 => 3.0 / (1.0 + 2.4 * mf),
            1 => z + 15.0 / (1.0 + 2.5 * mf),
            _ => {
                let ai = (i - 1) as f64;
                z + (1.0 + 2.55 * ai) / (1.9 * ai) * (z - nodes[i - 2])
            }
        };
        for _ in 0..200 {
            let dz = laguerre_value(m, z) / laguerre_derivative(m, z);
            z -= dz;
            if dz.abs() <= 1e-15 * z.abs().max(1.0) {
                break;
            }
        }
        nodes[i] = z;
        // w_i = 1 / (x_i L_m′(x_i)²).
        let d = laguerre_derivative(m, z);
        weights[i] = 1.0 / (z * d * d);
    }
    Rule { nodes, weights }
}

fn laguerre_value(m: usize, x: f64) -> f64 {
    laguerre_pair(m, x).0
}

/// `L_m′(x) = m (L_m(x) − L_{m−1}(x)) / x`.
fn laguerre_derivative(m: usize, x: f64) -> f64 {
    let (p, pm1) = laguerre_pair(m, x);
    m as f64 * (p - pm1) / x
}

/// Returns `(L_m(x), L_{m−1}(x))`.
fn laguerre_pair(m: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (0.0, 1.0);
    for k in 1..=m {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0 - x) * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    (p1, p0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_integrates_polynomials_exactly() {
        for m in [1, 2, 5, 12, 31] {
            let r = gauss_legendre(m);
            for deg in 0..(2 * m) {
                let exact = if deg % 2 == 1 { 0.0 } else { 2.0 / (deg as f64 + 1.0) };
                let got = r.integrate(|x| x.powi(deg as i32));
                assert!((got - exact).abs() < 1e-13, "m={m} deg={deg}: {got} vs {exact}");
            }
        }
    }

    #[test]
    fn laguerre_integrates_moments() {
        for m in [1, 4, 10, 20] {
            let r = gauss_laguerre(m);
            let mut fact = 1.0;
            for deg in 0..(2 * m).min(24) {
                if deg > 0 {
                    fact *= deg as f64;
                }
                let got = r.integrate(|x| x.powi(deg as i32));
                assert!((got - fact).abs() < 1e-11 * fact, "m={m} deg={deg}: {got} vs {fact}");
            }
        }
    }
}

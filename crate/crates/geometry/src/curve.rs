//! Fourier-series boundary curves.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::GeometryError;

/// Options for [`PlanarDomain::validate`].
#[derive(Debug, Clone, PartialEq)]
pub struct ValidationOptions {
    /// Number of equispaced parameter samples used by every check.
    pub samples: usize,
    /// Smallest admissible speed `|γ′(s)|`, relative to the mean speed.
    pub relative_speed_tolerance: f64,
    /// Run the (sample-based, `O(samples²)`) self-intersection check.
    pub check_simplicity: bool,
}

impl Default for ValidationOptions {
    fn default() -> Self {
        Self { samples: crate::DEFAULT_QUADRATURE_POINTS, relative_speed_tolerance: 1e-8, check_simplicity: true }
    }
}

/// A similarity transform applied to the Fourier coefficients of a curve,
/// together with an optional shift of the curve parameter.
///
/// The image point is `translation + scale · R(rotation) · γ(s + parameter_shift)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DomainTransform {
    pub scale: f64,
    pub rotation: f64,
    pub translation: [f64; 2],
    pub parameter_shift: f64,
}

impl Default for DomainTransform {
    fn default() -> Self {
        Self { scale: 1.0, rotation: 0.0, translation: [0.0, 0.0], parameter_shift: 0.0 }
    }
}

/// A planar domain bounded by a smooth closed curve given by truncated
/// Fourier series, traversed counterclockwise.
#[derive(Debug, Clone, PartialEq)]
pub struct PlanarDomain {
    label: String,
    x: Vec<Complex64>,
    y: Vec<Complex64>,
}

impl PlanarDomain {
    /// Builds a domain from coefficient lists without validating it.
    ///
    /// Both lists are padded with zeros to a common length.
    #[must_use]
    pub fn from_coefficients(label: impl Into<String>, x: Vec<Complex64>, y: Vec<Complex64>) -> Self {
        let modes = x.len().max(y.len()).max(1);
        let mut x = x;
        let mut y = y;
        x.resize(modes, Complex64::new(0.0, 0.0));
        y.resize(modes, Complex64::new(0.0, 0.0));
        Self { label: label.into(), x, y }
    }

    /// Circle of the given radius about `center`, parametrized
    /// counterclockwise by angle.
    #[must_use]
    pub fn circle(radius: f64, center: [f64; 2]) -> Self {
        Self::ellipse_at(radius, radius, center).with_label(format!("circle(R={radius})"))
    }

    /// Axis-aligned ellipse `(a cos s, b sin s)` centred at the origin.
    #[must_use]
    pub fn ellipse(a: f64, b: f64) -> Self {
        Self::ellipse_at(a, b, [0.0, 0.0]).with_label(format!("ellipse(a={a}, b={b})"))
    }

    fn ellipse_at(a: f64, b: f64, center: [f64; 2]) -> Self {
        let x = vec![Complex64::new(center[0], 0.0), Complex64::new(a, 0.0)];
        let y = vec![Complex64::new(center[1], 0.0), Complex64::new(0.0, -b)];
        Self::from_coefficients("ellipse", x, y)
    }

    /// Star-shaped curve `r(θ) = radius · (1 + ε cos(kθ))` about the origin.
    ///
    /// For `ε k² > 1 − ε` the curve is not convex.
    #[must_use]
    pub fn cosine_star(radius: f64, epsilon: f64, k: usize) -> Self {
        // cos(kθ)cosθ = ½(cos((k+1)θ) + cos((k−1)θ)),
        // cos(kθ)sinθ = ½(sin((k+1)θ) − sin((k−1)θ)).
        let modes = k + 2;
        let mut x = vec![Complex64::new(0.0, 0.0); modes];
        let mut y = vec![Complex64::new(0.0, 0.0); modes];
        x[1] += radius;
        y[1] += Complex64::new(0.0, -radius);
        let half = 0.5 * radius * epsilon;
        x[k + 1] += half;
        y[k + 1] += Complex64::new(0.0, -half);
        if k >= 1 {
            x[k - 1] += half;
            // −½ sin((k−1)θ) = Re(½ i e^{i(k−1)θ}).
            y[k - 1] += Complex64::new(0.0, half);
        }
        Self::from_coefficients(format!("cosine_star(eps={epsilon}, k={k})"), x, y)
    }

    /// Replaces the label.
    #[must_use]
    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    #[must_use]
    pub fn label(&self) -> &str {
        &self.label
    }

    /// Fourier coefficients of the x-coordinate.
    #[must_use]
    pub fn x_coefficients(&self) -> &[Complex64] {
        &self.x
    }

    /// Fourier coefficients of the y-coordinate.
    #[must_use]
    pub fn y_coefficients(&self) -> &[Complex64] {
        &self.y
    }

    /// Highest stored Fourier index.
    #[must_use]
    pub fn max_mode(&self) -> usize {
        self.x.len() - 1
    }

    /// Checks regularity, orientation and (optionally) simplicity on a
    /// sample grid.
    ///
    /// # Errors
    /// The first failed invariant, as a [`GeometryError`].
    pub fn validate(&self, options: &ValidationOptions) -> Result<(), GeometryError> {
        let m = options.samples.max(8);
        for (name, coeffs) in [("x", &self.x), ("y", &self.y)] {
            if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
                return Err(GeometryError::InvalidDomain(format!("non-finite {name} coefficient")));
            }
        }
        let h = TAU / m as f64;
        let speeds: Vec<f64> = (0..m).map(|i| self.speed(i as f64 * h)).collect();
        let mean = speeds.iter().sum::<f64>() / m as f64;
        if !(mean > 0.0) {
            return Err(GeometryError::DegenerateCurve { s: 0.0, speed: 0.0 });
        }
        for (i, &v) in speeds.iter().enumerate() {
            if v < options.relative_speed_tolerance * mean {
                return Err(GeometryError::DegenerateCurve { s: i as f64 * h, speed: v });
            }
        }
        let area = self.signed_area();
        if !(area > 0.0) {
            return Err(GeometryError::NotCounterclockwise { signed_area: area });
        }
        if options.check_simplicity {
            self.check_simple(m)?;
        }
        Ok(())
    }

    fn check_simple(&self, m: usize) -> Result<(), GeometryError> {
        let pts = self.sample(m);
        let seg = |i: usize| (pts[i], pts[(i + 1) % m]);
        for i in 0..m {
            for j in (i + 2)..m {
                if i == 0 && j == m - 1 {
                    continue;
                }
                let (a, b) = seg(i);
                let (c, d) = seg(j);
                if segments_cross(a, b, c, d) {
                    let h = TAU / m as f64;
                    return Err(GeometryError::SelfIntersection { s1: i as f64 * h, s2: j as f64 * h });
                }
            }
        }
        Ok(())
    }

    /// Evaluates the `order`-th parameter derivative of a coordinate series.
    fn eval(coeffs: &[Complex64], s: f64, order: u32) -> f64 {
        let mut acc = 0.0;
        for (k, c) in coeffs.iter().enumerate() {
            let kf = k as f64;
            let (sin, cos) = (kf * s).sin_cos();
            // (ik)^order e^{iks}
            let factor = Complex64::new(0.0, kf).powu(order) * Complex64::new(cos, sin);
            acc += (c * factor).re;
        }
        acc
    }

    /// `γ(s)`.
    #[must_use]
    pub fn point(&self, s: f64) -> [f64; 2] {
        [Self::eval(&self.x, s, 0), Self::eval(&self.y, s, 0)]
    }

    /// `γ^{(order)}(s)`.
    #[must_use]
    pub fn derivative(&self, s: f64, order: u32) -> [f64; 2] {
        [Self::eval(&self.x, s, order), Self::eval(&self.y, s, order)]
    }

    /// Speed `|γ′(s)|`.
    #[must_use]
    pub fn speed(&self, s: f64) -> f64 {
        let d = self.derivative(s, 1);
        d[0].hypot(d[1])
    }

    /// Upper bound `Σ k(|c_k| + |d_k|)` on the speed, used as a scale for
    /// degeneracy tolerances.
    #[must_use]
    pub fn speed_bound(&self) -> f64 {
        self.x.iter().zip(&self.y).enumerate().map(|(k, (a, b))| k as f64 * (a.norm() + b.norm())).sum()
    }

    /// Unit tangent in the direction of increasing parameter.
    #[must_use]
    pub fn unit_tangent(&self, s: f64) -> [f64; 2] {
        let d = self.derivative(s, 1);
        let v = d[0].hypot(d[1]);
        [d[0] / v, d[1] / v]
    }

    /// Outward unit normal (the tangent rotated clockwise for a
    /// counterclockwise curve).
    #[must_use]
    pub fn outward_normal(&self, s: f64) -> [f64; 2] {
        let t = self.unit_tangent(s);
        [t[1], -t[0]]
    }

    /// Signed curvature `(x′y″ − y′x″)/|γ′|³`; positive on a
    /// counterclockwise convex curve.
    #[must_use]
    pub fn curvature(&self, s: f64) -> f64 {
        let d1 = self.derivative(s, 1);
        let d2 = self.derivative(s, 2);
        let v = d1[0].hypot(d1[1]);
        (d1[0] * d2[1] - d1[1] * d2[0]) / (v * v * v)
    }

    /// Number of trapezoid nodes that integrate products of the coordinate
    /// series exactly.
    fn exact_nodes(&self) -> usize {
        (4 * self.max_mode() + 8).max(64)
    }

    /// Signed area `½ ∮ (x y′ − y x′) ds`, exact for the stored series.
    #[must_use]
    pub fn signed_area(&self) -> f64 {
        let m = self.exact_nodes();
        let h = TAU / m as f64;
        let mut sum = 0.0;
        for i in 0..m {
            let s = i as f64 * h;
            let p = self.point(s);
            let d = self.derivative(s, 1);
            sum += p[0] * d[1] - p[1] * d[0];
        }
        0.5 * sum * h
    }

    /// Area centroid of the enclosed region, exact for the stored series.
    #[must_use]
    pub fn centroid(&self) -> [f64; 2] {
        // Green's theorem: ∫x dA = ½∮x² dy, ∫y dA = −½∮y² dx.
        let m = 2 * self.exact_nodes();
        let h = TAU / m as f64;
        let (mut mx, mut my) = (0.0, 0.0);
        for i in 0..m {
            let s = i as f64 * h;
            let p = self.point(s);
            let d = self.derivative(s, 1);
            mx += 0.5 * p[0] * p[0] * d[1];
            my -= 0.5 * p[1] * p[1] * d[0];
        }
        let area = self.signed_area();
        [mx * h / area, my * h / area]
    }

    /// Equispaced samples `γ(2πi/m)`.
    #[must_use]
    pub fn sample(&self, m: usize) -> Vec<[f64; 2]> {
        let h = TAU / m as f64;
        (0..m).map(|i| self.point(i as f64 * h)).collect()
    }

    /// Whether every ray from `center` meets the curve once, tested via the
    /// sign of `(γ − c) × γ′` on `m` samples.
    #[must_use]
    pub fn is_star_shaped_about(&self, center: [f64; 2], m: usize) -> bool {
        let h = TAU / m as f64;
        (0..m).all(|i| {
            let s = i as f64 * h;
            let p = self.point(s);
            let d = self.derivative(s, 1);
            (p[0] - center[0]) * d[1] - (p[1] - center[1]) * d[0] > 0.0
        })
    }

    /// Largest distance from `center` to the sampled curve, used as a length
    /// scale.
    #[must_use]
    pub fn outer_radius(&self, center: [f64; 2], m: usize) -> f64 {
        self.sample(m).iter().map(|p| (p[0] - center[0]).hypot(p[1] - center[1])).fold(0.0, f64::max)
    }

    /// Applies a similarity transform (and parameter shift) to the
    /// coefficients. Orientation is preserved for positive scale.
    #[must_use]
    pub fn transformed(&self, t: &DomainTransform) -> Self {
        let (sin, cos) = t.rotation.sin_cos();
        let mut x = Vec::with_capacity(self.x.len());
        let mut y = Vec::with_capacity(self.y.len());
        for (k, (cx, cy)) in self.x.iter().zip(&self.y).enumerate() {
            let phase = Complex64::from_polar(1.0, k as f64 * t.parameter_shift);
            let (cx, cy) = (cx * phase, cy * phase);
            x.push(t.scale * (cos * cx - sin * cy));
            y.push(t.scale * (sin * cx + cos * cy));
        }
        x[0] += t.translation[0];
        y[0] += t.translation[1];
        Self { label: self.label.clone(), x, y }
    }
}

fn orientation(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> f64 {
    (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
}

/// Proper crossing test for segments `ab` and `cd`.
fn segments_cross(a: [f64; 2], b: [f64; 2], c: [f64; 2], d: [f64; 2]) -> bool {
    let o1 = orientation(a, b, c);
    let o2 = orientation(a, b, d);
    let o3 = orientation(c, d, a);
    let o4 = orientation(c, d, b);
    o1 * o2 < 0.0 && o3 * o4 < 0.0
}

//! Symbol formulas evaluated at an arbitrary point `x` of the local model.
//!
//! Index conventions (zero-based): the `n` velocity/coordinate indices are
//! `0..n`, with `nn = n − 1` the normal one; the `(n+1)`-st row/column
//! (index `n`) of the q-, b- and c-families is the pressure-like component.
//! Greek sums run over the tangential indices `0..nn`, Latin sums over all
//! `0..n`. Ricci terms vanish in flat space and derivatives of the
//! Christoffel symbols are zero in the model (see [`LocalModel`]).

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::context::{LocalModel, MuFunction};
use crate::matrix::{identity, real, zeros, CMatrix, I};

/// Geometric quantities at one model point.
pub(crate) struct Point<'a> {
    pub m: &'a LocalModel,
    pub x: Vec<f64>,
    pub g: DMatrix<f64>,
    pub dg: Vec<DMatrix<f64>>,
    pub mu: f64,
}

impl<'a> Point<'a> {
    pub fn new(m: &'a LocalModel, x: &[f64]) -> Self {
        let g = m.ginv(x);
        let dg = (0..m.n).map(|k| m.dginv(k)).collect();
        let mu = m.mu(x);
        Self { m, x: x.to_vec(), g, dg, mu }
    }

    fn n(&self) -> usize {
        self.m.n
    }
    fn nn(&self) -> usize {
        self.m.n - 1
    }
    fn gam(&self, j: usize, k: usize, l: usize) -> f64 {
        self.m.gamma(j, k, l)
    }

    /// `η_a = g^{aβ} ξ_β` (tangential ξ, extended by zero).
    pub fn eta(&self, xi: &[f64]) -> Vec<f64> {
        (0..self.n()).map(|a| (0..self.nn()).map(|b| self.g[(a, b)] * xi[b]).sum()).collect()
    }

    /// `|ξ′|_g`.
    pub fn nu(&self, xi: &[f64]) -> f64 {
        let eta = self.eta(xi);
        (0..self.nn()).map(|a| eta[a] * xi[a]).sum::<f64>().sqrt()
    }

    fn mu_inv(&self) -> MuFunction {
        self.m.mu_pow(&self.x, -1.0)
    }

    /// `s = (μ+ρ)^{1/2}`.
    fn s(&self) -> f64 {
        (self.mu + self.m.rho).sqrt()
    }

    /// `f^{;j} = g^{jk} ∂_k f`.
    fn raise(&self, f: &MuFunction) -> Vec<f64> {
        let n = self.n();
        (0..n).map(|j| (0..n).map(|k| self.g[(j, k)] * f.d1(k)).sum()).collect()
    }

    /// `∂_l (f^{;j})`.
    fn d_raise(&self, f: &MuFunction, l: usize) -> Vec<f64> {
        let n = self.n();
        (0..n).map(|j| (0..n).map(|k| self.dg[l][(j, k)] * f.d1(k) + self.g[(j, k)] * f.d2(l, k)).sum()).collect()
    }

    /// Covariant Hessian `∇_a∇_b f`.
    fn cov_hess(&self, f: &MuFunction, a: usize, b: usize) -> f64 {
        f.d2(a, b) - (0..self.n()).map(|c| self.gam(c, a, b) * f.d1(c)).sum::<f64>()
    }

    /// `Δ_g f`.
    fn laplacian(&self, f: &MuFunction) -> f64 {
        let n = self.n();
        let mut s = 0.0;
        for a in 0..n {
            for b in 0..n {
                s += self.g[(a, b)] * self.cov_hess(f, a, b);
            }
        }
        s
    }

    /// `∂_k Δ_g f`.
    fn d_laplacian(&self, f: &MuFunction, k: usize) -> f64 {
        let n = self.n();
        let mut s = 0.0;
        for a in 0..n {
            for b in 0..n {
                let d_hess = f.d3(k, a, b) - (0..n).map(|c| self.gam(c, a, b) * f.d2(k, c)).sum::<f64>();
                s += self.dg[k][(a, b)] * self.cov_hess(f, a, b) + self.g[(a, b)] * d_hess;
            }
        }
        s
    }

    /// `f^{;m;j} = g^{ma} g^{jb} ∇_a∇_b f`.
    fn raise2(&self, f: &MuFunction, m: usize, j: usize) -> f64 {
        let n = self.n();
        let mut s = 0.0;
        for a in 0..n {
            for b in 0..n {
                s += self.g[(m, a)] * self.g[(j, b)] * self.cov_hess(f, a, b);
            }
        }
        s
    }

    /// `Γ^β_{nβ}` (tangential trace).
    fn gamma_trace_n(&self) -> f64 {
        (0..self.nn()).map(|b| self.gam(b, self.nn(), b)).sum()
    }

    /// `Σ_l Γ^l_{kl}`.
    fn gamma_contract(&self, k: usize) -> f64 {
        (0..self.n()).map(|l| self.gam(l, k, l)).sum()
    }

    // ---------------------------------------------------------------- b, c

    pub fn b1(&self, xi: &[f64]) -> CMatrix {
        let (n, nn) = (self.n(), self.nn());
        let f = self.s() / self.mu;
        let eta = self.eta(xi);
        let mut b = zeros(n + 1);
        for j in 0..n {
            let lin: f64 = (0..nn).map(|be| self.gam(j, be, nn) * eta[be]).sum();
            b[(j, n)] = I * real(4.0 * f * lin);
        }
        b
    }

    /// `∂b₁/∂ξ_l`.
    pub fn b1_dxi(&self, l: usize) -> CMatrix {
        let (n, nn) = (self.n(), self.nn());
        let f = self.s() / self.mu;
        let mut b = zeros(n + 1);
        for j in 0..n {
            let lin: f64 = (0..nn).map(|be| self.gam(j, be, nn) * self.g[(be, l)]).sum();
            b[(j, n)] = I * real(4.0 * f * lin);
        }
        b
    }

    pub fn b0(&self) -> CMatrix {
        let (n, nn) = (self.n(), self.nn());
        let (mu, rho, s) = (self.mu, self.m.rho, self.s());
        let minv = self.mu_inv();
        let minv_up = self.raise(&minv);
        let dmu_n = self.m.grad_mu[nn];
        let mut b = identity(n + 1) * real(self.gamma_trace_n());
        for j in 0..n {
            for k in 0..n {
                let mut v = 2.0 * self.gam(j, k, nn);
                if k == nn {
                    v += mu * minv_up[j];
                }
                if j == k {
                    v += rho / (mu * (mu + rho)) * dmu_n;
                }
                b[(j, k)] += real(v);
            }
        }
        let d_minv_up_n = self.d_raise(&minv, nn);
        for j in 0..n {
            let mut v = -2.0 * mu * d_minv_up_n[j];
            v -= 2.0 * mu * (0..nn).map(|a| self.gam(j, a, nn) * minv_up[a]).sum::<f64>();
            // g^{αγ} Γ^j_{βγ} Γ^β_{nα} and g^{αβ} Γ^j_{nγ} Γ^γ_{αβ}
            for a in 0..nn {
                for c in 0..nn {
                    for be in 0..nn {
                        v -= self.g[(a, c)] * self.gam(j, be, c) * self.gam(be, nn, a);
                        v -= self.g[(a, be)] * self.gam(j, nn, c) * self.gam(c, a, be);
                    }
                }
            }
            // −2 g^{αγ} g^{βσ} Γ^j_{γσ} Γ^n_{αβ}
            for a in 0..nn {
                for be in 0..nn {
                    for c in 0..nn {
                        for sg in 0..nn {
                            v -= 2.0 * self.g[(a, c)] * self.g[(be, sg)] * self.gam(j, c, sg) * self.gam(nn, a, be);
                        }
                    }
                }
            }
            b[(j, n)] += real(s / mu * v);
        }
        b[(n, nn)] += real(mu / s);
        b
    }

    pub fn c2(&self, xi: &[f64]) -> CMatrix {
        let n = self.n();
        let nu = self.nu(xi);
        let eta = self.eta(xi);
        let f = self.s() / self.mu;
        let mut c = identity(n + 1) * real(-nu * nu);
        for j in 0..n {
            c[(j, n)] = real(-2.0 * f * quad(self, j, &eta));
        }
        c
    }

    pub fn c1(&self, xi: &[f64]) -> CMatrix {
        let (n, nn) = (self.n(), self.nn());
        let (mu, rho, s) = (self.mu, self.m.rho, self.s());
        let eta = self.eta(xi);
        let minv = self.mu_inv();
        let minv_up = self.raise(&minv);
        let mut diag = 0.0;
        for a in 0..nn {
            for be in 0..nn {
                let tr: f64 = (0..nn).map(|c| self.gam(c, a, c)).sum();
                diag += (self.g[(a, be)] * tr + self.dg[a][(a, be)]) * xi[be];
            }
        }
        let mut c = identity(n + 1) * (I * real(diag));
        let grad_eta: f64 = (0..nn).map(|a| self.m.grad_mu[a] * eta[a]).sum();
        for j in 0..n {
            for k in 0..n {
                let mut v = 0.0;
                if k != nn {
                    v += mu * minv_up[j] * xi[k];
                }
                if j == k {
                    v += rho / (mu * (mu + rho)) * grad_eta;
                }
                v += 2.0 * (0..nn).map(|a| self.gam(j, k, a) * eta[a]).sum::<f64>();
                c[(j, k)] += I * real(v);
            }
        }
        for j in 0..n {
            let mut tot = 0.0;
            for be in 0..nn {
                let mut v = 0.0;
                for a in 0..nn {
                    let d = self.d_raise(&minv, a);
                    v -= 2.0 * mu * self.g[(a, be)] * d[j];
                    v -= 2.0 * mu * self.g[(a, be)] * (0..n).map(|sx| self.gam(j, sx, a) * minv_up[sx]).sum::<f64>();
                }
                for sx in 0..n {
                    for h in 0..n {
                        for r in 0..n {
                            for mm in 0..n {
                                v -= 2.0 * self.gam(j, sx, h) * self.g[(sx, r)] * self.g[(h, mm)] * self.gam(be, r, mm);
                            }
                        }
                    }
                }
                for a in 0..nn {
                    let mut w = 0.0;
                    for mm in 0..n {
                        for r in 0..n {
                            for h in 0..n {
                                w -= self.g[(mm, r)] * self.gam(j, h, r) * self.gam(h, a, mm);
                                w -= self.g[(mm, r)] * self.gam(j, a, h) * self.gam(h, mm, r);
                            }
                        }
                    }
                    v -= w * self.g[(a, be)];
                }
                tot += v * xi[be];
            }
            c[(j, n)] += I * real(s / mu * tot);
        }
        for k in 0..nn {
            c[(n, k)] += I * real(mu / s * xi[k]);
        }
        c
    }

    pub fn c0(&self) -> CMatrix {
        let n = self.n();
        let (mu, rho, s) = (self.mu, self.m.rho, self.s());
        let minv = self.mu_inv();
        let minv_up = self.raise(&minv);
        let p = self.m.mu_rho_pow(&self.x, -0.5);
        let p_up = self.raise(&p);
        let grad = &self.m.grad_mu;
        let mut c = zeros(n + 1);
        let lead = s * self.laplacian(&p) + s / mu * (0..n).map(|l| grad[l] * p_up[l]).sum::<f64>();
        for j in 0..n {
            c[(j, j)] = real(lead);
        }
        c[(n, n)] = real(-mu * self.laplacian(&minv));
        for j in 0..n {
            for k in 0..n {
                let mut v = mu * minv_up[j] * self.gamma_contract(k) + mu * s * minv_up[j] * p.d1(k);
                for mm in 0..n {
                    for l in 0..n {
                        for h in 0..n {
                            v += self.g[(mm, l)] * self.gam(j, h, l) * self.gam(h, k, mm);
                            v -= self.g[(mm, l)] * self.gam(j, k, h) * self.gam(h, mm, l);
                        }
                        v += rho / (mu * (mu + rho)) * self.g[(mm, l)] * self.gam(j, k, mm) * grad[l];
                    }
                }
                // −μ^{-1} ∇^j∇_k μ, with μ affine in the model.
                let mut hess_up = 0.0;
                for a in 0..n {
                    hess_up -= self.g[(j, a)] * (0..n).map(|cc| self.gam(cc, a, k) * grad[cc]).sum::<f64>();
                }
                v -= hess_up / mu;
                c[(j, k)] += real(v);
            }
        }
        let d_lap: Vec<f64> = (0..n).map(|k| self.d_laplacian(&minv, k)).collect();
        let d_up: Vec<Vec<f64>> = (0..n).map(|l| self.d_raise(&minv, l)).collect();
        for j in 0..n {
            let mut v = -2.0 * (0..n).map(|k| self.g[(j, k)] * d_lap[k]).sum::<f64>();
            for mm in 0..n {
                for l in 0..n {
                    for sx in 0..n {
                        v -= 2.0 * self.g[(mm, l)] * self.gam(j, sx, mm) * d_up[l][sx];
                    }
                }
            }
            v -= 2.0 / mu * (0..n).map(|mm| grad[mm] * self.raise2(&minv, mm, j)).sum::<f64>();
            for sx in 0..n {
                let mut w = 0.0;
                for mm in 0..n {
                    for l in 0..n {
                        for h in 0..n {
                            w += self.g[(mm, l)] * self.gam(j, h, l) * self.gam(h, sx, mm);
                            w -= self.g[(mm, l)] * self.gam(j, sx, h) * self.gam(h, mm, l);
                        }
                    }
                }
                v -= w * minv_up[sx];
            }
            c[(j, n)] += real(s * v);
        }
        for k in 0..n {
            c[(n, k)] += real(mu / s * self.gamma_contract(k) + mu * p.d1(k));
        }
        c
    }

    // ------------------------------------------------------------- q family

    /// Coefficient `μ^{-1}(μ+ρ)^{1/2}` of the q₁ correction.
    fn q_factor(&self) -> MuFunction {
        self.m.mu_mixed(&self.x, -1.0, 0.5)
    }

    /// Last column of A₁ (sign −1) or A₂ (sign +1) for metric `g`.
    fn a_column(&self, g: &DMatrix<f64>, xi: &[f64], sign: f64) -> Vec<Complex64> {
        let n = self.n();
        let eta = eta_with(g, xi, n);
        let nu = nu_with(&eta, xi);
        (0..n).map(|j| I * real(2.0 * sign * lin(self, j, &eta)) + real(quad(self, j, &eta) / nu)).collect()
    }

    fn column_matrix(&self, col: &[Complex64]) -> CMatrix {
        let n = self.n();
        let mut m = zeros(n + 1);
        for (j, v) in col.iter().enumerate() {
            m[(j, n)] = *v;
        }
        m
    }

    pub fn a1(&self, xi: &[f64]) -> CMatrix {
        self.column_matrix(&self.a_column(&self.g, xi, -1.0))
    }

    pub fn a2(&self, xi: &[f64]) -> CMatrix {
        self.column_matrix(&self.a_column(&self.g, xi, 1.0))
    }

    pub fn q1(&self, xi: &[f64]) -> CMatrix {
        let n = self.n();
        identity(n + 1) * real(self.nu(xi)) + self.a2(xi) * real(self.q_factor().value())
    }

    /// `∂q₁/∂ξ_l`, analytic.
    pub fn q1_dxi(&self, xi: &[f64], l: usize) -> CMatrix {
        let n = self.n();
        let eta = self.eta(xi);
        let nu = self.nu(xi);
        let dnu = eta[l] / nu;
        let f = self.q_factor().value();
        let mut m = identity(n + 1) * real(dnu);
        for j in 0..n {
            let dlin = dlin_dxi(self, j, l);
            let q = quad(self, j, &eta);
            let dq = dquad_dxi(self, j, &eta, l);
            m[(j, n)] += real(f) * (I * real(2.0 * dlin) + real(dq / nu - q * dnu / (nu * nu)));
        }
        m
    }

    /// `∂²q₁/∂ξ_l∂ξ_r`, analytic.
    pub fn q1_dxi2(&self, xi: &[f64], l: usize, r: usize) -> CMatrix {
        let n = self.n();
        let eta = self.eta(xi);
        let nu = self.nu(xi);
        let (dl, dr) = (eta[l] / nu, eta[r] / nu);
        let dlr = self.g[(l, r)] / nu - eta[l] * eta[r] / nu.powi(3);
        let f = self.q_factor().value();
        let mut m = identity(n + 1) * real(dlr);
        for j in 0..n {
            let q = quad(self, j, &eta);
            let ql = dquad_dxi(self, j, &eta, l);
            let qr = dquad_dxi(self, j, &eta, r);
            let qlr: f64 = (0..self.nn())
                .flat_map(|c| (0..self.nn()).map(move |sg| (c, sg)))
                .map(|(c, sg)| {
                    self.gam(j, c, sg) * (self.g[(c, l)] * self.g[(sg, r)] + self.g[(c, r)] * self.g[(sg, l)])
                })
                .sum();
            let v = qlr / nu - (ql * dr + qr * dl) / (nu * nu) - q * dlr / (nu * nu) + 2.0 * q * dl * dr / nu.powi(3);
            m[(j, n)] += real(f * v);
        }
        m
    }

    /// `∂q₁/∂x_k`, analytic within the local model.
    pub fn q1_dx(&self, xi: &[f64], k: usize) -> CMatrix {
        let n = self.n();
        let f = self.q_factor();
        let a2 = self.a2(xi);
        let mut m = a2 * real(f.d1(k));
        let dg = &self.dg[k];
        if dg.iter().any(|v| *v != 0.0) {
            let eta = self.eta(xi);
            let nu = self.nu(xi);
            let deta = eta_with(dg, xi, n);
            let dnu = (0..self.nn()).map(|a| deta[a] * xi[a]).sum::<f64>() / (2.0 * nu);
            for j in 0..n {
                m[(j, j)] += real(dnu);
            }
            m[(n, n)] += real(dnu);
            for j in 0..n {
                let dlin = lin(self, j, &deta);
                let q = quad(self, j, &eta);
                let dq: f64 = quad_bilinear(self, j, &deta, &eta) + quad_bilinear(self, j, &eta, &deta);
                m[(j, n)] += real(f.value()) * (I * real(2.0 * dlin) + real(dq / nu - q * dnu / (nu * nu)));
            }
        }
        m
    }

    /// `∂²q₁/∂x_k∂x_l` for tangential `k, l` (where the metric is constant
    /// in the model and only the viscosity factor varies).
    pub fn q1_dx2_tangential(&self, xi: &[f64], k: usize, l: usize) -> CMatrix {
        debug_assert!(k < self.nn() && l < self.nn());
        self.a2(xi) * real(self.q_factor().d2(k, l))
    }

    /// `E₁ = iΣ ∂_ξq₁ ∂_xq₁ + b₀q₁ − iΣ ∂_ξb₁ ∂_xq₁ + ∂_{xₙ}q₁ − c₁`.
    pub fn e1(&self, xi: &[f64]) -> CMatrix {
        let nn = self.nn();
        let q1 = self.q1(xi);
        let mut e = self.b0() * &q1 + self.q1_dx(xi, nn) - self.c1(xi);
        for l in 0..nn {
            let dx = self.q1_dx(xi, l);
            e += (self.q1_dxi(xi, l) - self.b1_dxi(l)) * dx * I;
        }
        e
    }

    /// The map `E ↦ X(E)` producing q₀ from E₁ and q₋₁ from E₀.
    pub fn x_map(&self, xi: &[f64], e: &CMatrix) -> CMatrix {
        let nu = self.nu(xi);
        let (mu, rho) = (self.mu, self.m.rho);
        let a1 = self.a1(xi);
        let a2 = self.a2(xi);
        let k1 = (mu + rho).sqrt() / (4.0 * mu * nu * nu);
        let k2 = (mu + rho) / (4.0 * mu * mu * nu.powi(3));
        e * real(1.0 / (2.0 * nu)) - (&a1 * e + e * &a2) * real(k1) + &a1 * e * &a2 * real(k2)
    }

    pub fn q0(&self, xi: &[f64]) -> CMatrix {
        self.x_map(xi, &self.e1(xi))
    }
}

fn eta_with(g: &DMatrix<f64>, xi: &[f64], n: usize) -> Vec<f64> {
    (0..n).map(|a| xi.iter().enumerate().map(|(b, x)| g[(a, b)] * x).sum()).collect()
}

fn nu_with(eta: &[f64], xi: &[f64]) -> f64 {
    xi.iter().enumerate().map(|(a, x)| eta[a] * x).sum::<f64>().sqrt()
}

/// `Σ_β Γ^j_{βn} v_β`.
fn lin(p: &Point<'_>, j: usize, v: &[f64]) -> f64 {
    let nn = p.nn();
    (0..nn).map(|b| p.gam(j, b, nn) * v[b]).sum()
}

fn dlin_dxi(p: &Point<'_>, j: usize, l: usize) -> f64 {
    let nn = p.nn();
    (0..nn).map(|b| p.gam(j, b, nn) * p.g[(b, l)]).sum()
}

/// `Σ_{γσ} Γ^j_{γσ} u_γ v_σ`.
fn quad_bilinear(p: &Point<'_>, j: usize, u: &[f64], v: &[f64]) -> f64 {
    let nn = p.nn();
    let mut s = 0.0;
    for c in 0..nn {
        for sg in 0..nn {
            s += p.gam(j, c, sg) * u[c] * v[sg];
        }
    }
    s
}

fn quad(p: &Point<'_>, j: usize, eta: &[f64]) -> f64 {
    quad_bilinear(p, j, eta, eta)
}

fn dquad_dxi(p: &Point<'_>, j: usize, eta: &[f64], l: usize) -> f64 {
    let col: Vec<f64> = (0..p.n()).map(|c| p.g[(c, l)]).collect();
    quad_bilinear(p, j, &col, eta) + quad_bilinear(p, j, eta, &col)
}

//! Gradient Einstein-type structures with the height function as potential.
//!
//! The defining system on `(Σ, g)` is
//!
//! ```text
//! Ric - α du⊗du + Hess h - μ dh⊗dh = λ g,      τ_g u = du(∇h),
//! ```
//!
//! with `h` the height of the immersion. For a rotational hypersurface every
//! term is diagonal in the adapted frame, so each equation is evaluated as an
//! [`AxiTensor`] at a parameter value `s`.

pub mod classification;
mod report;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ambient::Ambient;
use crate::expr::{EvalError, Expression};
use crate::geometry::{AxiTensor, PointGeometry};
use crate::jet::Jet2;
use crate::oracle::fiber_coordinate_laplacian_closed;
use crate::rotational::{
    representative_angles, sphere_factor, AngleProfile, DenseProfile, Hypersurface, ProfileSystem,
    RotationalSurface, SurfaceError, TauConvention,
};

pub use report::{
    residual_eq0001, residual_prop1, EquationReport, GridResidual, MarginRow, ResidualReport,
};

/// Below this value of `1 - θ²` the `(λ, μ)` system is treated as singular.
pub const SINGULAR_THRESHOLD: f64 = 1e-12;
/// Step for finite differences of solver-produced `λ`.
const LAMBDA_STEP: f64 = 1e-4;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StructureError {
    #[error("alpha must be positive, got {0}")]
    Alpha(f64),
    #[error("fiber index k = {k} must lie in 1..={max}")]
    FiberIndex { k: usize, max: usize },
    #[error("u mode `{mode}` is not available on a {surface}")]
    Mode {
        mode: &'static str,
        surface: &'static str,
    },
    #[error("expected {expected} fiber angles, got {found}")]
    Angles { expected: usize, found: usize },
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error("{field} failed at s = {s}: {source}")]
    Field {
        field: &'static str,
        s: f64,
        source: EvalError,
    },
    #[error("(λ, μ) system is singular at s = {s} (1 - θ² = {det})")]
    Singular { s: f64, det: f64 },
}

/// Which reading of the harmonic-map equation a tau residual uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Convention {
    /// `τ_g u = Δu`, the full Laplace-Beltrami operator.
    A,
    /// `u''/u' = √(1-θ²)`, the ODE obtained by dropping the `σ'/σ` term.
    B,
}

impl Convention {
    pub const BOTH: [Convention; 2] = [Convention::A, Convention::B];
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Convention::A => "A",
            Convention::B => "B",
        })
    }
}

/// A base-radial map obtained by integrating its harmonic-map equation
/// alongside the profile.
#[derive(Debug, Clone)]
pub struct IntegratedU {
    c2: f64,
    c3: f64,
    convention: TauConvention,
    ambient: Ambient,
    profile: AngleProfile,
    dense: DenseProfile,
}

impl IntegratedU {
    pub fn constants(&self) -> (f64, f64) {
        (self.c2, self.c3)
    }

    pub fn convention(&self) -> TauConvention {
        self.convention
    }

    fn system(&self) -> ProfileSystem<'_> {
        ProfileSystem {
            ambient: &self.ambient,
            profile: &self.profile,
            radial_map: Some((self.c2, self.convention)),
        }
    }

    fn jet(&self, surface: &RotationalSurface, s: f64) -> Result<Jet2, SurfaceError> {
        let state = self.dense.state_at(&self.system(), s)?;
        let p = surface.point(s)?;
        let n = surface.n() as f64;
        let zeta1 = p.zeta.d1;
        let mut u1 = self.c2 * p.zeta.value.exp();
        let u2 = match self.convention {
            TauConvention::PaperOde => u1 * zeta1,
            TauConvention::FullLaplacian => {
                u1 *= p.sigma.value.powf(1.0 - n);
                u1 * (zeta1 + (1.0 - n) * p.sigma.d1 / p.sigma.value)
            }
        };
        Ok(Jet2::new(state[2], u1, u2))
    }
}

/// `u = u(s)`, either closed form or integrated.
#[derive(Debug, Clone)]
pub enum RadialU {
    Expr(Expression),
    Integrated(IntegratedU),
}

/// The map `u: Σ → ℝ` (or the identity of a slice).
#[derive(Debug, Clone)]
pub enum UMap {
    Constant(f64),
    BaseRadial(RadialU),
    /// `u = c4 v_k + c5` for the fiber angle `v_k`, `1 ≤ k ≤ n-1`.
    FiberLinear {
        k: usize,
        c4: f64,
        c5: f64,
    },
    /// The identity of a slice onto its fiber, with `u*⟨,⟩ = g`.
    IsometricIdentity,
}

impl UMap {
    pub fn mode_name(&self) -> &'static str {
        match self {
            UMap::Constant(_) => "constant",
            UMap::BaseRadial(_) => "base-radial",
            UMap::FiberLinear { .. } => "fiber-linear",
            UMap::IsometricIdentity => "isometric-identity",
        }
    }
}

/// `μ` or `λ`: a closed form, a constant, or the solver's value.
#[derive(Debug, Clone)]
pub enum ScalarField {
    Constant(f64),
    Expr(Expression),
    Solve,
}

impl ScalarField {
    fn jet(&self, field: &'static str, s: f64) -> Result<Option<Jet2>, StructureError> {
        match self {
            ScalarField::Constant(c) => Ok(Some(Jet2::constant(*c))),
            ScalarField::Expr(e) => e
                .eval_jet2(s)
                .map(Some)
                .map_err(|source| StructureError::Field { field, s, source }),
            ScalarField::Solve => Ok(None),
        }
    }
}

/// The map `u` evaluated at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UPoint {
    /// `u` with its s-derivatives; zero derivatives outside base-radial mode.
    pub radial: Jet2,
    /// `du⊗du` in the orthonormal frame (`g` for the identity).
    pub du_du: AxiTensor,
    /// Tension field `Δu` (zero for constant maps and the identity).
    pub tension: f64,
    /// `du(∇h)`.
    pub du_grad_h: f64,
    /// `u'' - √(1-θ²) u'` for base-radial maps; `tension` otherwise.
    pub ode_residual: f64,
}

impl UPoint {
    /// `|∇u|²`, the trace of `du⊗du`.
    pub fn grad_norm2(&self, n: usize) -> f64 {
        self.du_du.trace(n)
    }

    pub fn tau_residual(&self, convention: Convention) -> f64 {
        match convention {
            Convention::A => (self.tension - self.du_grad_h).abs(),
            Convention::B => self.ode_residual.abs(),
        }
    }
}

/// Output of the pointwise `(λ, μ)` solve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Solved {
    pub lambda: f64,
    pub mu: f64,
    /// False on slices, where `dh = 0` leaves `μ` free (reported as 0).
    pub mu_determined: bool,
    /// For fiber-linear maps with `n ≥ 3`: the leftover of the `v_k` equation
    /// once `(λ, μ)` satisfy the other two.
    pub vv_k_mismatch: Option<f64>,
}

/// Everything about the structure at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PointEval {
    pub geometry: PointGeometry,
    pub u: UPoint,
    pub ric_u: AxiTensor,
    pub lambda: f64,
    pub mu: f64,
    pub solved: Option<Solved>,
}

impl PointEval {
    pub fn s(&self) -> f64 {
        self.geometry.s
    }

    /// `Ric^u + Hess h - μ dh⊗dh - λ g` with the intrinsic Hessian.
    pub fn residual_eq0001(&self) -> AxiTensor {
        let g = &self.geometry;
        self.ric_u + g.hess_h - g.dh_dh() * self.mu - AxiTensor::scalar(self.lambda)
    }

    /// `Ric^u - [(λ - f'/f) g + (μ + f'/f) dh⊗dh - θ A]`.
    pub fn residual_prop1(&self) -> AxiTensor {
        let g = &self.geometry;
        let log1 = g.warp.log1;
        let rhs = AxiTensor::scalar(self.lambda - log1) + g.dh_dh() * (self.mu + log1)
            - g.shape * g.theta.value;
        self.ric_u - rhs
    }

    /// The three routes to `R^u`: `(intrinsic, trace, extrinsic)`.
    pub fn u_scalar_curvature(&self, alpha: f64) -> (f64, f64, f64) {
        let g = &self.geometry;
        let n = g.n;
        let nf = n as f64;
        let grad_u = self.u.grad_norm2(n);
        let intrinsic = g.ricci.trace(n) - alpha * grad_u;
        let h = g.mean_curvature();
        let log1 = g.warp.log1;
        let trace = nf * (self.lambda - log1) + (self.mu + log1) * g.grad_h_norm2()
            - nf * g.theta.value * h;
        let extrinsic =
            g.ambient_scalar_sum() + nf * nf * h * h - g.shape.norm2(n) - alpha * grad_u;
        (intrinsic, trace, extrinsic)
    }
}

/// `(f'/f)(g - dh⊗dh) + θ A`.
pub fn hessian_height_extrinsic(g: &PointGeometry) -> AxiTensor {
    let log1 = g.warp.log1;
    AxiTensor::scalar(log1) - g.dh_dh() * log1 + g.shape * g.theta.value
}

/// Both sides of the Bochner-type identity at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BochnerEval {
    pub s: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub applicable: bool,
}

/// Data `(α, u, μ, λ)` attached to a hypersurface.
#[derive(Debug, Clone)]
pub struct EinsteinTypeStructure {
    surface: Hypersurface,
    alpha: f64,
    u: UMap,
    mu: ScalarField,
    lambda: ScalarField,
    angles: Vec<f64>,
}

impl EinsteinTypeStructure {
    pub fn new(
        surface: Hypersurface,
        alpha: f64,
        u: UMap,
        mu: ScalarField,
        lambda: ScalarField,
    ) -> Result<Self, StructureError> {
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(StructureError::Alpha(alpha));
        }
        let n = surface.n();
        let kind = match surface {
            Hypersurface::Rotational(_) => "rotational hypersurface",
            Hypersurface::Slice(_) => "slice",
        };
        let is_slice = matches!(surface, Hypersurface::Slice(_));
        match &u {
            UMap::FiberLinear { k, .. } if *k == 0 || *k > n - 1 => {
                return Err(StructureError::FiberIndex { k: *k, max: n - 1 })
            }
            UMap::IsometricIdentity if !is_slice => {
                return Err(StructureError::Mode {
                    mode: u.mode_name(),
                    surface: kind,
                })
            }
            UMap::BaseRadial(_) | UMap::FiberLinear { .. } if is_slice => {
                return Err(StructureError::Mode {
                    mode: u.mode_name(),
                    surface: kind,
                })
            }
            _ => {}
        }
        Ok(EinsteinTypeStructure {
            surface,
            alpha,
            u,
            mu,
            lambda,
            angles: representative_angles(n),
        })
    }

    /// Fiber angles used where a quantity depends on the fiber point
    /// (fiber-linear maps only).
    pub fn with_angles(mut self, angles: Vec<f64>) -> Result<Self, StructureError> {
        let expected = self.surface.n() - 1;
        if angles.len() != expected {
            return Err(StructureError::Angles {
                expected,
                found: angles.len(),
            });
        }
        self.angles = angles;
        Ok(self)
    }

    pub fn surface(&self) -> &Hypersurface {
        &self.surface
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn u(&self) -> &UMap {
        &self.u
    }

    pub fn mu(&self) -> &ScalarField {
        &self.mu
    }

    pub fn lambda(&self) -> &ScalarField {
        &self.lambda
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    pub fn n(&self) -> usize {
        self.surface.n()
    }

    pub fn grid(&self) -> Vec<f64> {
        self.surface.grid()
    }

    /// Same surface and map with other `μ`, `λ`.
    pub fn with_fields(&self, mu: ScalarField, lambda: ScalarField) -> Self {
        EinsteinTypeStructure {
            mu,
            lambda,
            ..self.clone()
        }
    }

    fn u_point(&self, g: &PointGeometry) -> Result<UPoint, StructureError> {
        let n = g.n;
        let zeta1 = g.height.d1;
        Ok(match &self.u {
            UMap::Constant(c) => UPoint {
                radial: Jet2::constant(*c),
                du_du: AxiTensor::ZERO,
                tension: 0.0,
                du_grad_h: 0.0,
                ode_residual: 0.0,
            },
            UMap::IsometricIdentity => UPoint {
                radial: Jet2::constant(0.0),
                du_du: AxiTensor::scalar(1.0),
                tension: 0.0,
                du_grad_h: 0.0,
                ode_residual: 0.0,
            },
            UMap::BaseRadial(radial) => {
                let u = match radial {
                    RadialU::Expr(e) => {
                        e.eval_jet2(g.s).map_err(|source| StructureError::Field {
                            field: "u",
                            s: g.s,
                            source,
                        })?
                    }
                    RadialU::Integrated(iu) => {
                        let r = self
                            .surface
                            .as_rotational()
                            .expect("checked at construction");
                        iu.jet(r, g.s)?
                    }
                };
                UPoint {
                    radial: u,
                    du_du: AxiTensor::new(u.d1 * u.d1, 0.0, 0.0),
                    tension: u.d2 + (n as f64 - 1.0) * g.sigma_ratio() * u.d1,
                    du_grad_h: zeta1 * u.d1,
                    ode_residual: u.d2 - zeta1 * u.d1,
                }
            }
            UMap::FiberLinear { k, c4, c5 } => {
                let sigma = g.sigma.value;
                let norm = c4 * c4 / (sigma * sigma * sphere_factor(&self.angles, *k));
                let tension = c4 * fiber_coordinate_laplacian_closed(n, sigma, *k, &self.angles);
                UPoint {
                    radial: Jet2::constant(c4 * self.angles[*k - 1] + c5),
                    du_du: AxiTensor::new(0.0, norm, 0.0),
                    tension,
                    du_grad_h: 0.0,
                    ode_residual: tension,
                }
            }
        })
    }

    /// `Ric^u = Ric - α du⊗du` at `s`.
    pub fn ric_u(&self, s: f64) -> Result<AxiTensor, StructureError> {
        let g = self.surface.geometry(s)?;
        let u = self.u_point(&g)?;
        Ok(g.ricci - u.du_du * self.alpha)
    }

    fn solve_point(&self, g: &PointGeometry, ric_u: AxiTensor) -> Result<Solved, StructureError> {
        let n = g.n;
        let hess = g.hess_h;
        if let Hypersurface::Slice(_) = self.surface {
            return Ok(Solved {
                lambda: ric_u.ss + hess.ss,
                mu: 0.0,
                mu_determined: false,
                vv_k_mismatch: None,
            });
        }
        let det = g.grad_h_norm2();
        if det < SINGULAR_THRESHOLD {
            return Err(StructureError::Singular { s: g.s, det });
        }
        let lambda = ric_u.generic_fiber(n) + hess.generic_fiber(n);
        let mu = (ric_u.ss + hess.ss - lambda) / det;
        let vv_k_mismatch = match self.u {
            UMap::FiberLinear { .. } if n >= 3 => Some(ric_u.vv_k + hess.vv_k - lambda),
            _ => None,
        };
        Ok(Solved {
            lambda,
            mu,
            mu_determined: true,
            vv_k_mismatch,
        })
    }

    /// Unique `(λ, μ)` making the `ss` and generic fiber components of the
    /// structure equation vanish at `s`.
    pub fn solve_lambda_mu(&self, s: f64) -> Result<Solved, StructureError> {
        let g = self.surface.geometry(s)?;
        let u = self.u_point(&g)?;
        self.solve_point(&g, g.ricci - u.du_du * self.alpha)
    }

    pub fn evaluate(&self, s: f64) -> Result<PointEval, StructureError> {
        let g = self.surface.geometry(s)?;
        let u = self.u_point(&g)?;
        let ric_u = g.ricci - u.du_du * self.alpha;
        let mu = self.mu.jet("mu", s)?;
        let lambda = self.lambda.jet("lambda", s)?;
        let solved = if mu.is_none() || lambda.is_none() {
            Some(self.solve_point(&g, ric_u)?)
        } else {
            None
        };
        Ok(PointEval {
            geometry: g,
            u,
            ric_u,
            lambda: lambda.map_or_else(|| solved.expect("solved").lambda, |j| j.value),
            mu: mu.map_or_else(|| solved.expect("solved").mu, |j| j.value),
            solved,
        })
    }

    /// `λ'(s)`: from the jet for closed forms, by central differences of the
    /// solver otherwise (one-sided at the ends of the range).
    pub fn lambda_derivative(&self, s: f64) -> Result<f64, StructureError> {
        if let Some(j) = self.lambda.jet("lambda", s)? {
            return Ok(j.d1);
        }
        let Hypersurface::Rotational(r) = &self.surface else {
            return Ok(0.0);
        };
        let grid = r.grid();
        let (lo, hi) = (grid[0], grid[grid.len() - 1]);
        let h = LAMBDA_STEP;
        let lam = |x: f64| self.solve_lambda_mu(x).map(|o| o.lambda);
        if s - 2.0 * h >= lo && s + 2.0 * h <= hi {
            let d1 = (lam(s + h)? - lam(s - h)?) / (2.0 * h);
            let d2 = (lam(s + 2.0 * h)? - lam(s - 2.0 * h)?) / (4.0 * h);
            Ok((4.0 * d1 - d2) / 3.0)
        } else if s - 2.0 * h < lo {
            Ok((-3.0 * lam(s)? + 4.0 * lam(s + h)? - lam(s + 2.0 * h)?) / (2.0 * h))
        } else {
            Ok((3.0 * lam(s)? - 4.0 * lam(s - h)? + lam(s - 2.0 * h)?) / (2.0 * h))
        }
    }

    /// Both sides of
    /// `½ Δ_h |∇h|² = |Hess h|² + α|τu|² + (2μλn - λ - 2μR^u)|∇h|² + μ(2μ-1)|∇h|⁴ - (n-2)⟨∇λ, ∇h⟩`
    /// with `Δ_h w = Δw - ⟨∇h, ∇w⟩`. `applicable` is left false here; see
    /// [`Self::bochner_report`].
    pub fn bochner_eval(&self, s: f64) -> Result<BochnerEval, StructureError> {
        let pe = self.evaluate(s)?;
        let g = &pe.geometry;
        let n = g.n;
        let nf = n as f64;
        let (lhs, zeta1) = match g.kind {
            crate::geometry::SurfaceKind::Slice => (0.0, 0.0),
            crate::geometry::SurfaceKind::Rotational => {
                let t = g.theta;
                let w1 = -2.0 * t.value * t.d1;
                let w2 = -2.0 * (t.d1 * t.d1 + t.value * t.d2);
                let lap = w2 + (nf - 1.0) * g.sigma_ratio() * w1;
                (0.5 * (lap - g.height.d1 * w1), g.height.d1)
            }
        };
        let grad_h2 = g.grad_h_norm2();
        let (r_u, _, _) = pe.u_scalar_curvature(self.alpha);
        let (lam, mu) = (pe.lambda, pe.mu);
        let lambda1 = if nf == 2.0 || zeta1 == 0.0 {
            0.0
        } else {
            self.lambda_derivative(s)?
        };
        let rhs = g.hess_h.norm2(n)
            + self.alpha * pe.u.tension * pe.u.tension
            + (2.0 * mu * lam * nf - lam - 2.0 * mu * r_u) * grad_h2
            + mu * (2.0 * mu - 1.0) * grad_h2 * grad_h2
            - (nf - 2.0) * lambda1 * zeta1;
        Ok(BochnerEval {
            s,
            lhs,
            rhs,
            applicable: false,
        })
    }

    /// Evaluate every grid point in parallel, in grid order.
    pub fn evaluate_grid(&self) -> Result<Vec<PointEval>, StructureError> {
        use rayon::prelude::*;
        self.grid().par_iter().map(|&s| self.evaluate(s)).collect()
    }

    /// Bochner identity on the grid. A point is applicable when `μ` is
    /// constant over the grid within `tol (1 + |μ|)` and the structure
    /// residual there is below `tol`.
    pub fn bochner_report(&self, tol: f64) -> Result<Vec<BochnerEval>, StructureError> {
        use rayon::prelude::*;
        let evals = self.evaluate_grid()?;
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for e in &evals {
            lo = lo.min(e.mu);
            hi = hi.max(e.mu);
        }
        let mu_constant = hi - lo <= tol * (1.0 + hi.abs().max(lo.abs()));
        let n = self.n();
        evals
            .par_iter()
            .map(|e| {
                let mut b = self.bochner_eval(e.s())?;
                b.applicable = mu_constant && e.residual_eq0001().max_abs(n) < tol;
                Ok(b)
            })
            .collect()
    }

    /// Signed hypothesis margins of the rigidity results at every grid point.
    pub fn hypothesis_margins(&self) -> Result<Vec<MarginRow>, StructureError> {
        let evals = self.evaluate_grid()?;
        let ambient = self.surface.ambient();
        evals
            .iter()
            .map(|e| {
                let g = &e.geometry;
                let nf = g.n as f64;
                let h = g.mean_curvature();
                let w = g.warp;
                let log1 = w.log1;
                let f2_over_f = w.f2 / w.f;
                let theta = g.theta.value;
                let bracket = log1 - (nf - 1.0) * f2_over_f;
                let discriminant = (nf * h + theta).powi(2) + 4.0 * (bracket - e.lambda);
                let rho = g.shape.ss;
                let rho_margin = if discriminant > 0.0 {
                    let root = discriminant.sqrt();
                    let below = 0.5 * (nf * h + theta - root) - rho;
                    let above = rho - 0.5 * (nf * h + theta + root);
                    Some(below.max(above))
                } else {
                    None
                };
                Ok(MarginRow {
                    s: g.s,
                    mean_curvature: h,
                    mean_curvature_upper: log1 - h,
                    constant_map: e.lambda - (bracket + (e.mu + log1).abs() + h * (nf * h + theta)),
                    discriminant,
                    rho,
                    rho_margin,
                    mu_plus_log1: e.mu + log1,
                    fiber_curvature: ambient
                        .curvature_condition_margin(g.height.value)
                        .map_err(|source| SurfaceError::Ambient { s: g.s, source })?,
                    traceless_norm2: g.traceless_norm2(),
                })
            })
            .collect()
    }
}

/// Integrate the base-radial harmonic-map equation under `convention`:
/// `u' = c2 e^h` or `u' = c2 e^h σ^{1-n}`, with `u(s_lo) = c3`.
pub fn solve_u_base(
    surface: &RotationalSurface,
    c2: f64,
    c3: f64,
    convention: TauConvention,
) -> Result<UMap, SurfaceError> {
    let (zeta0, beta0) = surface.initial_values();
    let system = ProfileSystem {
        ambient: surface.ambient(),
        profile: surface.profile(),
        radial_map: Some((c2, convention)),
    };
    let dense = DenseProfile::integrate(
        &system,
        &[zeta0, beta0, c3],
        surface.grid().to_vec(),
        surface.tolerance(),
    )?;
    Ok(UMap::BaseRadial(RadialU::Integrated(IntegratedU {
        c2,
        c3,
        convention,
        ambient: surface.ambient().clone(),
        profile: surface.profile().clone(),
        dense,
    })))
}

/// Free-function form of [`EinsteinTypeStructure::ric_u`].
pub fn ric_u(st: &EinsteinTypeStructure, s: f64) -> Result<AxiTensor, StructureError> {
    st.ric_u(s)
}

/// Free-function form of [`EinsteinTypeStructure::solve_lambda_mu`].
pub fn solve_lambda_mu(st: &EinsteinTypeStructure, s: f64) -> Result<Solved, StructureError> {
    st.solve_lambda_mu(s)
}

/// Free-function form of [`PointEval::u_scalar_curvature`].
pub fn u_scalar_curvature(
    st: &EinsteinTypeStructure,
    s: f64,
) -> Result<(f64, f64, f64), StructureError> {
    Ok(st.evaluate(s)?.u_scalar_curvature(st.alpha()))
}

/// Free-function form of [`EinsteinTypeStructure::bochner_eval`].
pub fn bochner_eval(st: &EinsteinTypeStructure, s: f64) -> Result<BochnerEval, StructureError> {
    st.bochner_eval(s)
}

/// Free-function form of [`EinsteinTypeStructure::hypothesis_margins`].
pub fn hypothesis_margins(st: &EinsteinTypeStructure) -> Result<Vec<MarginRow>, StructureError> {
    st.hypothesis_margins()
}

#[cfg(test)]
mod tests;

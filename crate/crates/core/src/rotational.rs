//! Rotational hypersurfaces of `ℝ ×_f ℝ^n` and slices of `I ×_f M(c)`.
//!
//! A rotational hypersurface is generated by an arc-length profile
//! `s ↦ (ζ(s), β(s))` in the `(t, x_n)` plane, rotated about the `t` axis.
//! It is determined by its angle function `θ(s)` through
//!
//! ```text
//! ζ' = √(1 - θ²),    β' = θ / f(ζ),
//! ```
//!
//! and its induced metric is `ds² + σ(s)² g_{S^{n-1}}` with `σ = f(ζ) β`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ambient::{Ambient, AmbientError};
use crate::expr::{EvalError, Expression};
use crate::geometry::{radial_hessian, warped_ricci, AxiTensor, PointGeometry, SurfaceKind};
use crate::jet::Jet2;
use crate::ode::{integrate_to_nodes, rk4_fixed, IntegrationError, OdeSystem};

/// Default quadrature tolerance for the profile integrals.
pub const DEFAULT_TOLERANCE: f64 = 1e-10;
/// Smallest admissible number of grid points.
pub const MIN_GRID_POINTS: usize = 16;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SurfaceError {
    #[error("angle function failed at s = {s}: {source}")]
    Angle { s: f64, source: EvalError },
    #[error("|θ| = {} ≥ 1 at s = {s}", theta.abs())]
    AngleOutOfRange { s: f64, theta: f64 },
    #[error("profile left the ambient at s = {s}: {source}")]
    Ambient { s: f64, source: AmbientError },
    #[error("σ = {sigma} is not positive at s = {s}")]
    NonPositiveSigma { s: f64, sigma: f64 },
    #[error("quadrature failed near s = {s}: {detail}")]
    Quadrature { s: f64, detail: String },
    #[error("grid needs at least {MIN_GRID_POINTS} points, got {0}")]
    GridTooSmall(usize),
    #[error("s = {s} is outside the profile range [{lo}, {hi}]")]
    OutOfRange { s: f64, lo: f64, hi: f64 },
    #[error("empty profile range [{lo}, {hi}]")]
    EmptyRange { lo: f64, hi: f64 },
    #[error("rotational hypersurfaces need a flat fiber ℝ^n, got fiber curvature {0}")]
    UnsupportedFiber(f64),
    #[error("expected {expected} fiber angles, got {found}")]
    AngleCount { expected: usize, found: usize },
    #[error("tolerance must be positive, got {0}")]
    Tolerance(f64),
}

impl SurfaceError {
    fn from_integration(err: IntegrationError<SurfaceError>) -> SurfaceError {
        match err {
            IntegrationError::Rhs { source, .. } => source,
            IntegrationError::StepUnderflow { s, tolerance } => SurfaceError::Quadrature {
                s,
                detail: format!("step size underflow at tolerance {tolerance:e}"),
            },
            IntegrationError::TooManySteps { target, max_steps } => SurfaceError::Quadrature {
                s: target,
                detail: format!("more than {max_steps} steps"),
            },
        }
    }
}

/// Angle function `θ(s)` on a closed parameter range.
#[derive(Debug, Clone)]
pub struct AngleProfile {
    theta: Expression,
    s_lo: f64,
    s_hi: f64,
}

impl AngleProfile {
    pub fn new(theta: Expression, s_lo: f64, s_hi: f64) -> Result<AngleProfile, SurfaceError> {
        if !(s_lo < s_hi) || !s_lo.is_finite() || !s_hi.is_finite() {
            return Err(SurfaceError::EmptyRange { lo: s_lo, hi: s_hi });
        }
        Ok(AngleProfile { theta, s_lo, s_hi })
    }

    pub fn theta(&self) -> &Expression {
        &self.theta
    }

    pub fn range(&self) -> (f64, f64) {
        (self.s_lo, self.s_hi)
    }

    pub fn theta_value(&self, s: f64) -> Result<f64, SurfaceError> {
        let theta = self
            .theta
            .eval(s)
            .map_err(|source| SurfaceError::Angle { s, source })?;
        if theta.abs() >= 1.0 {
            return Err(SurfaceError::AngleOutOfRange { s, theta });
        }
        Ok(theta)
    }

    pub fn theta_jet(&self, s: f64) -> Result<Jet2, SurfaceError> {
        let theta = self
            .theta
            .eval_jet2(s)
            .map_err(|source| SurfaceError::Angle { s, source })?;
        if theta.value.abs() >= 1.0 {
            return Err(SurfaceError::AngleOutOfRange {
                s,
                theta: theta.value,
            });
        }
        Ok(theta)
    }
}

/// How the base-radial harmonic-map equation is read when integrating `u`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TauConvention {
    /// `u''/u' = √(1-θ²)`, i.e. `u' = c e^h`.
    #[serde(rename = "paper-ODE")]
    PaperOde,
    /// `Δu = h' u'` with the full Laplacian, i.e. `u' = c e^h σ^{1-n}`.
    #[serde(rename = "full-Laplacian")]
    FullLaplacian,
}

/// The profile ODE, optionally augmented with a base-radial map `u`.
pub(crate) struct ProfileSystem<'a> {
    pub ambient: &'a Ambient,
    pub profile: &'a AngleProfile,
    pub radial_map: Option<(f64, TauConvention)>,
}

impl ProfileSystem<'_> {
    /// `u'` from the state `(ζ, β)`.
    pub fn map_slope(&self, s: f64, zeta: f64, beta: f64) -> Result<f64, SurfaceError> {
        let Some((c2, convention)) = self.radial_map else {
            return Ok(0.0);
        };
        let base = c2 * zeta.exp();
        match convention {
            TauConvention::PaperOde => Ok(base),
            TauConvention::FullLaplacian => {
                let f = self
                    .ambient
                    .f_value(zeta)
                    .map_err(|source| SurfaceError::Ambient { s, source })?;
                let sigma = f * beta;
                if sigma <= 0.0 {
                    return Err(SurfaceError::NonPositiveSigma { s, sigma });
                }
                Ok(base * sigma.powi(1 - self.ambient.n() as i32))
            }
        }
    }
}

impl OdeSystem for ProfileSystem<'_> {
    type Error = SurfaceError;

    fn dim(&self) -> usize {
        if self.radial_map.is_some() {
            3
        } else {
            2
        }
    }

    fn rhs(&self, s: f64, y: &[f64], dy: &mut [f64]) -> Result<(), SurfaceError> {
        let theta = self.profile.theta_value(s)?;
        let f = self
            .ambient
            .f_value(y[0])
            .map_err(|source| SurfaceError::Ambient { s, source })?;
        dy[0] = (1.0 - theta * theta).sqrt();
        dy[1] = theta / f;
        if self.radial_map.is_some() {
            dy[2] = self.map_slope(s, y[0], y[1])?;
        }
        Ok(())
    }
}

/// States of an integrated profile at uniform nodes, with local
/// re-integration for queries between nodes.
#[derive(Debug, Clone)]
pub(crate) struct DenseProfile {
    pub nodes: Vec<f64>,
    pub states: Vec<Vec<f64>>,
}

impl DenseProfile {
    pub fn uniform_nodes(lo: f64, hi: f64, m: usize) -> Vec<f64> {
        let step = (hi - lo) / (m - 1) as f64;
        let mut nodes: Vec<f64> = (0..m).map(|i| lo + step * i as f64).collect();
        nodes[m - 1] = hi;
        nodes
    }

    pub fn integrate(
        system: &ProfileSystem<'_>,
        y0: &[f64],
        nodes: Vec<f64>,
        tolerance: f64,
    ) -> Result<DenseProfile, SurfaceError> {
        // the per-step tolerance sits well below the requested global accuracy
        let states = integrate_to_nodes(system, y0, &nodes, tolerance * 1e-3)
            .map_err(SurfaceError::from_integration)?;
        Ok(DenseProfile { nodes, states })
    }

    pub fn range(&self) -> (f64, f64) {
        (self.nodes[0], self.nodes[self.nodes.len() - 1])
    }

    pub fn state_at(&self, system: &ProfileSystem<'_>, s: f64) -> Result<Vec<f64>, SurfaceError> {
        let (lo, hi) = self.range();
        if !(s >= lo && s <= hi) {
            return Err(SurfaceError::OutOfRange { s, lo, hi });
        }
        let m = self.nodes.len();
        let step = (hi - lo) / (m - 1) as f64;
        let i = (((s - lo) / step).round() as usize).min(m - 1);
        let node = self.nodes[i];
        if node == s {
            return Ok(self.states[i].clone());
        }
        let substeps = 8usize.max(((s - node).abs() / 2e-3).ceil() as usize);
        rk4_fixed(system, node, &self.states[i], s, substeps)
    }
}

/// Everything about the profile at one parameter value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfilePoint {
    pub s: f64,
    pub theta: Jet2,
    /// `ζ` with its s-derivatives; this is also the height function.
    pub zeta: Jet2,
    pub beta: Jet2,
    /// `(f, f', f'')` at `t = ζ(s)`, derivatives in `t`.
    pub warp: Jet2,
    /// `σ = f(ζ) β` with its s-derivatives.
    pub sigma: Jet2,
}

/// A rotational hypersurface sampled on a uniform grid.
#[derive(Debug, Clone)]
pub struct RotationalSurface {
    ambient: Ambient,
    profile: AngleProfile,
    zeta0: f64,
    beta0: f64,
    tolerance: f64,
    dense: DenseProfile,
}

impl RotationalSurface {
    /// Integrate the profile from `(ζ, β) = (zeta0, beta0)` at the start of the
    /// range and sample it on `m` uniform points.
    pub fn build(
        ambient: Ambient,
        profile: AngleProfile,
        zeta0: f64,
        beta0: f64,
        m: usize,
        tolerance: f64,
    ) -> Result<RotationalSurface, SurfaceError> {
        if ambient.fiber_curvature() != 0.0 {
            return Err(SurfaceError::UnsupportedFiber(ambient.fiber_curvature()));
        }
        if m < MIN_GRID_POINTS {
            return Err(SurfaceError::GridTooSmall(m));
        }
        if !(tolerance > 0.0) {
            return Err(SurfaceError::Tolerance(tolerance));
        }
        let (lo, hi) = profile.range();
        let nodes = DenseProfile::uniform_nodes(lo, hi, m);
        for &s in &nodes {
            profile.theta_value(s)?;
        }
        ambient
            .f_value(zeta0)
            .map_err(|source| SurfaceError::Ambient { s: lo, source })?;
        let system = ProfileSystem {
            ambient: &ambient,
            profile: &profile,
            radial_map: None,
        };
        let dense = DenseProfile::integrate(&system, &[zeta0, beta0], nodes, tolerance)?;
        let surface = RotationalSurface {
            ambient,
            profile,
            zeta0,
            beta0,
            tolerance,
            dense,
        };
        for (&s, y) in surface.dense.nodes.iter().zip(&surface.dense.states) {
            let f = surface
                .ambient
                .f_value(y[0])
                .map_err(|source| SurfaceError::Ambient { s, source })?;
            let sigma = f * y[1];
            if !(sigma > 0.0) {
                return Err(SurfaceError::NonPositiveSigma { s, sigma });
            }
        }
        Ok(surface)
    }

    pub(crate) fn system(&self) -> ProfileSystem<'_> {
        ProfileSystem {
            ambient: &self.ambient,
            profile: &self.profile,
            radial_map: None,
        }
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn profile(&self) -> &AngleProfile {
        &self.profile
    }

    pub fn n(&self) -> usize {
        self.ambient.n()
    }

    pub fn grid(&self) -> &[f64] {
        &self.dense.nodes
    }

    pub fn initial_values(&self) -> (f64, f64) {
        (self.zeta0, self.beta0)
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    /// `(ζ, β)` at `s`, exact at grid nodes and locally re-integrated between.
    pub fn state_at(&self, s: f64) -> Result<(f64, f64), SurfaceError> {
        let y = self.dense.state_at(&self.system(), s)?;
        Ok((y[0], y[1]))
    }

    pub fn point(&self, s: f64) -> Result<ProfilePoint, SurfaceError> {
        let (zeta, beta) = self.state_at(s)?;
        let theta = self.profile.theta_jet(s)?;
        let warp = self
            .ambient
            .warping_jet(zeta)
            .map_err(|source| SurfaceError::Ambient { s, source })?;

        let zeta1 = (1.0 - theta.value * theta.value).sqrt();
        let zeta2 = -theta.value * theta.d1 / zeta1;
        let zeta_jet = Jet2::new(zeta, zeta1, zeta2);
        // f(ζ(s)) as a function of s
        let f_of_s = Jet2::new(
            warp.value,
            warp.d1 * zeta1,
            warp.d2 * zeta1 * zeta1 + warp.d1 * zeta2,
        );
        let beta1 = theta.value / warp.value;
        let beta2 = (theta.d1 * warp.value - theta.value * f_of_s.d1) / (warp.value * warp.value);
        let beta_jet = Jet2::new(beta, beta1, beta2);
        let sigma = f_of_s * beta_jet;
        if !(sigma.value > 0.0) {
            return Err(SurfaceError::NonPositiveSigma {
                s,
                sigma: sigma.value,
            });
        }
        Ok(ProfilePoint {
            s,
            theta,
            zeta: zeta_jet,
            beta: beta_jet,
            warp,
            sigma,
        })
    }

    /// Principal curvatures: `-(f'/f)θ - θ'/√(1-θ²)` along `∂s` and
    /// `√(1-θ²)/σ - (f'/f)θ` on every fiber direction.
    pub fn shape_operator(&self, s: f64) -> Result<AxiTensor, SurfaceError> {
        Ok(shape_from_point(&self.point(s)?))
    }

    pub fn mean_curvature(&self, s: f64) -> Result<f64, SurfaceError> {
        Ok(self.geometry(s)?.mean_curvature())
    }

    pub fn traceless_phi_norm2(&self, s: f64) -> Result<f64, SurfaceError> {
        Ok(self.geometry(s)?.traceless_norm2())
    }

    /// `(h, h', |∇h|²)`.
    pub fn height_and_gradient(&self, s: f64) -> Result<(f64, f64, f64), SurfaceError> {
        let p = self.point(s)?;
        Ok((p.zeta.value, p.zeta.d1, 1.0 - p.theta.value * p.theta.value))
    }

    /// Point of the hypersurface in the coordinates `(t, x_1, …, x_n)`.
    pub fn embed_point(&self, s: f64, v: &[f64]) -> Result<Vec<f64>, SurfaceError> {
        let n = self.n();
        if v.len() != n - 1 {
            return Err(SurfaceError::AngleCount {
                expected: n - 1,
                found: v.len(),
            });
        }
        let (zeta, beta) = self.state_at(s)?;
        let mut point = Vec::with_capacity(n + 1);
        point.push(zeta);
        point.extend(sphere_chart(v).into_iter().map(|x| beta * x));
        Ok(point)
    }

    /// Intrinsic and extrinsic data at `s`.
    pub fn geometry(&self, s: f64) -> Result<PointGeometry, SurfaceError> {
        let p = self.point(s)?;
        let n = self.n();
        let warp = self
            .ambient
            .log_derivatives(p.zeta.value)
            .map_err(|source| SurfaceError::Ambient { s, source })?;
        let sec = self
            .ambient
            .sectional(p.zeta.value)
            .map_err(|source| SurfaceError::Ambient { s, source })?;
        let theta2 = p.theta.value * p.theta.value;
        Ok(PointGeometry {
            kind: SurfaceKind::Rotational,
            n,
            s,
            theta: p.theta,
            height: p.zeta,
            warp,
            sigma: p.sigma,
            shape: shape_from_point(&p),
            ricci: warped_ricci(n, p.sigma),
            hess_h: radial_hessian(p.sigma, p.zeta),
            k_radial_fiber: (1.0 - theta2) * sec.base_fiber + theta2 * sec.fiber_fiber,
            k_fiber_fiber: sec.fiber_fiber,
        })
    }

    /// Max over the grid of `|ζ'² + f(ζ)² β'² - 1|`.
    pub fn arc_length_defect(&self) -> Result<f64, SurfaceError> {
        let mut worst = 0.0f64;
        for &s in self.grid() {
            let p = self.point(s)?;
            let defect = p.zeta.d1 * p.zeta.d1 + (p.warp.value * p.beta.d1).powi(2) - 1.0;
            worst = worst.max(defect.abs());
        }
        Ok(worst)
    }

    /// Rows `(s, ζ, β, σ, θ, h)` at every grid node.
    pub fn profile_rows(&self) -> Result<Vec<[f64; 6]>, SurfaceError> {
        self.grid()
            .iter()
            .map(|&s| {
                let p = self.point(s)?;
                Ok([
                    s,
                    p.zeta.value,
                    p.beta.value,
                    p.sigma.value,
                    p.theta.value,
                    p.zeta.value,
                ])
            })
            .collect()
    }
}

fn shape_from_point(p: &ProfilePoint) -> AxiTensor {
    let log1 = p.warp.d1 / p.warp.value;
    let theta = p.theta.value;
    let zeta1 = p.zeta.d1;
    let ss = -log1 * theta - p.theta.d1 / zeta1;
    let vv = zeta1 / p.sigma.value - log1 * theta;
    AxiTensor::radial(ss, vv)
}

/// Unit-sphere chart `X(v_1, …, v_{n-1}) ∈ S^{n-1} ⊂ ℝ^n`:
/// `X_1 = cos v_1`, `X_2 = sin v_1 cos v_2`, …, `X_n = sin v_1 ⋯ sin v_{n-1}`.
pub fn sphere_chart(v: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(v.len() + 1);
    let mut prefix = 1.0;
    for &angle in v {
        out.push(prefix * angle.cos());
        prefix *= angle.sin();
    }
    out.push(prefix);
    out
}

/// `∏_{j<k} sin² v_j`: the squared length factor of `∂_{v_k}` on the unit
/// sphere (1-based `k`).
pub fn sphere_factor(v: &[f64], k: usize) -> f64 {
    v.iter().take(k - 1).map(|a| a.sin().powi(2)).product()
}

/// Fiber angles used for reports when no specific point is requested: every
/// angle at `π/3`, away from the chart singularities.
pub fn representative_angles(n: usize) -> Vec<f64> {
    vec![PI / 3.0; n.saturating_sub(1)]
}

/// The slice `{t0} × M^n(c)` oriented by `N = -∂t` (`θ = -1`).
#[derive(Debug, Clone)]
pub struct SliceSurface {
    ambient: Ambient,
    t0: f64,
}

impl SliceSurface {
    pub fn new(ambient: Ambient, t0: f64) -> Result<SliceSurface, SurfaceError> {
        ambient
            .f_value(t0)
            .map_err(|source| SurfaceError::Ambient { s: t0, source })?;
        Ok(SliceSurface { ambient, t0 })
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn height(&self) -> f64 {
        self.t0
    }

    pub fn n(&self) -> usize {
        self.ambient.n()
    }

    /// Radius `f(t0)` of the slice when the fiber is the unit sphere.
    pub fn radius(&self) -> f64 {
        self.ambient
            .f_value(self.t0)
            .expect("checked at construction")
    }

    pub fn geometry(&self) -> PointGeometry {
        let warp = self
            .ambient
            .log_derivatives(self.t0)
            .expect("checked at construction");
        let sec = self
            .ambient
            .sectional(self.t0)
            .expect("checked at construction");
        let n = self.n();
        let fiber_ricci = (n as f64 - 1.0) * self.ambient.fiber_curvature() / (warp.f * warp.f);
        PointGeometry {
            kind: SurfaceKind::Slice,
            n,
            s: 0.0,
            theta: Jet2::constant(-1.0),
            height: Jet2::constant(self.t0),
            warp,
            sigma: Jet2::constant(warp.f),
            shape: AxiTensor::scalar(warp.log1),
            ricci: AxiTensor::scalar(fiber_ricci),
            hess_h: AxiTensor::ZERO,
            k_radial_fiber: sec.fiber_fiber,
            k_fiber_fiber: sec.fiber_fiber,
        }
    }
}

/// Either kind of hypersurface the structure equations act on.
#[derive(Debug, Clone)]
pub enum Hypersurface {
    Rotational(RotationalSurface),
    Slice(SliceSurface),
}

impl Hypersurface {
    pub fn n(&self) -> usize {
        match self {
            Hypersurface::Rotational(r) => r.n(),
            Hypersurface::Slice(sl) => sl.n(),
        }
    }

    pub fn ambient(&self) -> &Ambient {
        match self {
            Hypersurface::Rotational(r) => r.ambient(),
            Hypersurface::Slice(sl) => sl.ambient(),
        }
    }

    /// Evaluation points: the profile grid, or the single point of a slice.
    pub fn grid(&self) -> Vec<f64> {
        match self {
            Hypersurface::Rotational(r) => r.grid().to_vec(),
            Hypersurface::Slice(_) => vec![0.0],
        }
    }

    pub fn geometry(&self, s: f64) -> Result<PointGeometry, SurfaceError> {
        match self {
            Hypersurface::Rotational(r) => r.geometry(s),
            Hypersurface::Slice(sl) => Ok(sl.geometry()),
        }
    }

    pub fn as_rotational(&self) -> Option<&RotationalSurface> {
        match self {
            Hypersurface::Rotational(r) => Some(r),
            Hypersurface::Slice(_) => None,
        }
    }
}

impl From<RotationalSurface> for Hypersurface {
    fn from(r: RotationalSurface) -> Self {
        Hypersurface::Rotational(r)
    }
}

impl From<SliceSurface> for Hypersurface {
    fn from(s: SliceSurface) -> Self {
        Hypersurface::Slice(s)
    }
}

/// Free-function form of [`RotationalSurface::build`].
pub fn build_surface(
    ambient: Ambient,
    profile: AngleProfile,
    zeta0: f64,
    beta0: f64,
    m: usize,
) -> Result<RotationalSurface, SurfaceError> {
    RotationalSurface::build(ambient, profile, zeta0, beta0, m, DEFAULT_TOLERANCE)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn flat(n: usize) -> Ambient {
        Ambient::euclidean_product(n)
    }

    fn profile(theta: &str, lo: f64, hi: f64) -> AngleProfile {
        AngleProfile::new(Expression::parse(theta, "s").unwrap(), lo, hi).unwrap()
    }

    fn gd(s: f64) -> f64 {
        2.0 * (s / 2.0).tanh().atan()
    }

    #[test]
    fn cylinder() {
        let surf = build_surface(flat(3), profile("0", 0.0, 4.0), 0.0, 1.0, 41).unwrap();
        for &s in surf.grid() {
            let p = surf.point(s).unwrap();
            assert!((p.zeta.value - s).abs() < 1e-13);
            assert_eq!(p.beta.value, 1.0);
            assert_eq!(p.sigma, Jet2::new(1.0, 0.0, 0.0));
            assert_eq!(surf.shape_operator(s).unwrap(), AxiTensor::radial(0.0, 1.0));
        }
        assert!((surf.mean_curvature(1.0).unwrap() - 2.0 / 3.0).abs() < 1e-15);
        assert!((surf.traceless_phi_norm2(1.0).unwrap() - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(surf.height_and_gradient(2.0).unwrap().2, 1.0);
        let x = surf.embed_point(2.0, &[0.0, 0.0]).unwrap();
        assert!((x[0] - 2.0).abs() < 1e-14 && x[1] == 1.0 && x[2] == 0.0 && x[3] == 0.0);
        let plane = build_surface(flat(2), profile("0", 0.0, 4.0), 0.0, 1.0, 41).unwrap();
        let x = plane.embed_point(2.0, &[0.0]).unwrap();
        assert!((x[0] - 2.0).abs() < 1e-14 && x[1] == 1.0 && x[2] == 0.0);
    }

    #[test]
    fn gudermannian_profile_matches_closed_forms() {
        let a = flat(2);
        let surf = build_surface(
            a,
            profile("sech(s)", 0.25, 2.0),
            0.25f64.cosh().ln(),
            gd(0.25),
            71,
        )
        .unwrap();
        for &s in surf.grid() {
            let (z, b) = surf.state_at(s).unwrap();
            assert!((z - s.cosh().ln()).abs() < 1e-9, "ζ at {s}");
            assert!((b - gd(s)).abs() < 1e-9, "β at {s}");
        }
        let p = surf.point(1.0).unwrap();
        assert!((p.zeta.value - 0.433_780_830_483_027).abs() < 1e-8);
        assert!((p.sigma.value - 0.865_769_483_239_659_6).abs() < 1e-8);
        let a = surf.shape_operator(1.0).unwrap();
        let sech1 = 1.0 / 1f64.cosh();
        assert!((a.ss - sech1).abs() < 1e-8);
        assert!((a.vv_k - 1f64.tanh() / gd(1.0)).abs() < 1e-8);
        let (h, _, g2) = surf.height_and_gradient(1.0).unwrap();
        assert!((h - 1f64.cosh().ln()).abs() < 1e-8);
        assert!((g2 - 1f64.tanh().powi(2)).abs() < 1e-12);
        let x = surf.embed_point(1.0, &[PI / 2.0]).unwrap();
        assert!((x[0] - 0.433_780_830_483_027).abs() < 1e-8);
        assert!(x[1].abs() < 1e-15);
        assert!((x[2] - gd(1.0)).abs() < 1e-8);
    }

    #[test]
    fn constant_angle_is_a_cone() {
        let theta0 = 0.6;
        let surf = build_surface(flat(3), profile("0.6", 0.5, 5.0), 0.0, 1.3, 46).unwrap();
        for &s in surf.grid() {
            let p = surf.point(s).unwrap();
            let sigma = theta0 * (s - 0.5) + 1.3;
            assert!((p.sigma.value - sigma).abs() < 1e-12);
            assert!((p.sigma.d1 - theta0).abs() < 1e-15);
            let a = surf.shape_operator(s).unwrap();
            assert_eq!(a.ss, 0.0);
            assert!((a.vv_k - 0.8 / sigma).abs() < 1e-12);
        }
    }

    #[test]
    fn off_grid_queries_interpolate_smoothly() {
        let surf = build_surface(
            flat(2),
            profile("sech(s)", 0.25, 2.0),
            0.25f64.cosh().ln(),
            gd(0.25),
            21,
        )
        .unwrap();
        for s in [0.26, 0.77, 1.234, 1.999] {
            let (z, b) = surf.state_at(s).unwrap();
            assert!((z - s.cosh().ln()).abs() < 1e-9);
            assert!((b - gd(s)).abs() < 1e-9);
        }
    }

    #[test]
    fn rotational_invariance_of_embedding() {
        let surf = build_surface(flat(3), profile("0.3*sin(s)", 0.0, 3.0), 0.0, 1.0, 31).unwrap();
        let (_, beta) = surf.state_at(1.3).unwrap();
        for i in 0..12 {
            let v = [0.1 + 0.25 * i as f64, 0.5 * i as f64];
            let x = surf.embed_point(1.3, &v).unwrap();
            let r = (x[1] * x[1] + x[2] * x[2] + x[3] * x[3]).sqrt();
            assert!((r - beta).abs() < 1e-14);
        }
        assert!(matches!(
            surf.embed_point(1.0, &[0.1]),
            Err(SurfaceError::AngleCount {
                expected: 2,
                found: 1
            })
        ));
    }

    #[test]
    fn error_paths() {
        assert!(matches!(
            build_surface(flat(2), profile("1", 0.0, 1.0), 0.0, 1.0, 16),
            Err(SurfaceError::AngleOutOfRange { .. })
        ));
        assert!(matches!(
            build_surface(flat(2), profile("0", 0.0, 1.0), 0.0, 1.0, 8),
            Err(SurfaceError::GridTooSmall(8))
        ));
        assert!(matches!(
            build_surface(flat(2), profile("-0.5", 0.0, 3.0), 0.0, 1.0, 16),
            Err(SurfaceError::NonPositiveSigma { .. })
        ));
        let bounded =
            Ambient::new(Expression::parse("1", "t").unwrap(), -1.0, 1.0, 0.0, 2).unwrap();
        assert!(matches!(
            build_surface(bounded, profile("0", 0.0, 3.0), 0.0, 1.0, 16),
            Err(SurfaceError::Ambient { .. })
        ));
        let sphere_fiber =
            Ambient::new(Expression::parse("t", "t").unwrap(), 0.0, 10.0, 1.0, 2).unwrap();
        assert!(matches!(
            build_surface(sphere_fiber, profile("0", 0.0, 1.0), 1.0, 1.0, 16),
            Err(SurfaceError::UnsupportedFiber(_))
        ));
        let surf = build_surface(flat(2), profile("0", 0.0, 1.0), 0.0, 1.0, 16).unwrap();
        assert!(matches!(
            surf.point(1.5),
            Err(SurfaceError::OutOfRange { .. })
        ));
    }

    #[test]
    fn slice_geometry() {
        let a = Ambient::new(
            Expression::parse("t", "t").unwrap(),
            0.0,
            f64::INFINITY,
            1.0,
            3,
        )
        .unwrap();
        let slice = SliceSurface::new(a, 2.0).unwrap();
        let g = slice.geometry();
        assert_eq!(g.shape, AxiTensor::scalar(0.5));
        assert_eq!(g.ricci, AxiTensor::scalar(0.5));
        assert_eq!(g.grad_h_norm2(), 0.0);
        // Gauss: K = K_ambient + principal curvature product, flat ambient
        assert!((g.gauss_ricci().ss - g.ricci.ss).abs() < 1e-15);
    }

    #[test]
    fn sphere_chart_is_unit() {
        let x = sphere_chart(&[0.4, 1.1, 2.5]);
        assert_eq!(x.len(), 4);
        let r: f64 = x.iter().map(|c| c * c).sum();
        assert!((r - 1.0).abs() < 1e-15);
        assert!(
            (sphere_factor(&[0.4, 1.1, 2.5], 3) - (0.4f64.sin() * 1.1f64.sin()).powi(2)).abs()
                < 1e-16
        );
        assert_eq!(sphere_factor(&[0.4], 1), 1.0);
    }
}

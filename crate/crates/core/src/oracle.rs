//! Brute-force tensor calculus on coordinate charts.
//!
//! Everything here works from metric components alone: Christoffel symbols
//! from central differences of `g`, the Riemann tensor from central
//! differences of the Christoffel symbols. Each first derivative is one
//! Richardson level deep, `(4 D(h) - D(2h)) / 3`. The results are the
//! independent side of every comparison against the closed forms in
//! [`crate::geometry`].

use std::f64::consts::PI;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ambient::Ambient;
use crate::geometry::{radial_hessian, radial_laplacian, AxiTensor};
use crate::jet::Jet2;
use crate::rotational::{representative_angles, Hypersurface, RotationalSurface, SliceSurface};

/// Default finite-difference step.
pub const DEFAULT_STEP: f64 = 1e-4;
/// Polar angles are kept in `[GUARD, π - GUARD]` for oracle runs.
pub const INTERIOR_GUARD: f64 = 0.2;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("metric evaluation failed at {point:?}: {detail}")]
    Metric { point: Vec<f64>, detail: String },
    #[error("metric is singular at {point:?}")]
    Singular { point: Vec<f64> },
    #[error("point {point:?} is too close to the chart boundary")]
    ChartBoundary { point: Vec<f64> },
    #[error("step must be positive, got {0}")]
    Step(f64),
    #[error("expected a point of dimension {expected}, got {found}")]
    Dimension { expected: usize, found: usize },
    #[error("fiber index {k} is not in 1..={max}")]
    FiberIndex { k: usize, max: usize },
}

/// A Riemannian metric on an open set of `ℝ^dim`.
pub trait ChartMetric: Sync {
    fn dim(&self) -> usize;

    fn metric(&self, p: &[f64]) -> Result<DMatrix<f64>, OracleError>;
}

type Warp<'a> = Box<dyn Fn(f64) -> Result<f64, String> + Send + Sync + 'a>;

/// `ds² + σ(s)² g_{S^{n-1}}` in the chart `(s, v_1, …, v_{n-1})`, with the
/// round metric `dv_1² + sin² v_1 dv_2² + …`.
pub struct WarpedChart<'a> {
    n: usize,
    sigma: Warp<'a>,
}

impl<'a> WarpedChart<'a> {
    pub fn new(n: usize, sigma: impl Fn(f64) -> Result<f64, String> + Send + Sync + 'a) -> Self {
        WarpedChart {
            n,
            sigma: Box::new(sigma),
        }
    }

    /// Induced metric of a rotational hypersurface; `σ` off the grid comes
    /// from the surface's local re-integration.
    pub fn rotational(surface: &'a RotationalSurface) -> Self {
        WarpedChart::new(surface.n(), move |s| {
            let (zeta, beta) = surface.state_at(s).map_err(|e| e.to_string())?;
            let f = surface.ambient().f_value(zeta).map_err(|e| e.to_string())?;
            Ok(f * beta)
        })
    }

    /// The slice `{t0} × M^n(c)` in geodesic polar coordinates about a point:
    /// `σ = r sin(s/r)`, `s` or `r sinh(s/r)` with `r = f(t0)`.
    pub fn slice(slice: &SliceSurface) -> WarpedChart<'static> {
        let r = slice.radius();
        let c = slice.ambient().fiber_curvature();
        WarpedChart::new(slice.n(), move |s| {
            Ok(if c > 0.0 {
                r * (s / r).sin()
            } else if c < 0.0 {
                r * (s / r).sinh()
            } else {
                s
            })
        })
    }

    pub fn sigma(&self, s: f64) -> Result<f64, String> {
        (self.sigma)(s)
    }
}

impl ChartMetric for WarpedChart<'_> {
    fn dim(&self) -> usize {
        self.n
    }

    fn metric(&self, p: &[f64]) -> Result<DMatrix<f64>, OracleError> {
        check_dim(self.n, p)?;
        let sigma = (self.sigma)(p[0]).map_err(|detail| OracleError::Metric {
            point: p.to_vec(),
            detail,
        })?;
        let mut g = DMatrix::zeros(self.n, self.n);
        g[(0, 0)] = 1.0;
        let mut factor = sigma * sigma;
        for i in 1..self.n {
            g[(i, i)] = factor;
            factor *= p[i].sin().powi(2);
        }
        Ok(g)
    }
}

/// The ambient `I ×_f M(c)` restricted to three coordinates `(t, x_1, x_2)`:
/// `dt² + f(t)² (dx_1² + S_c(x_1)² dx_2²)` with `S_c` equal to `1`, `sin` or
/// `sinh` for `c = 0, 1, -1`.
pub struct AmbientChart<'a> {
    ambient: &'a Ambient,
}

impl<'a> AmbientChart<'a> {
    pub fn new(ambient: &'a Ambient) -> Self {
        AmbientChart { ambient }
    }
}

impl ChartMetric for AmbientChart<'_> {
    fn dim(&self) -> usize {
        3
    }

    fn metric(&self, p: &[f64]) -> Result<DMatrix<f64>, OracleError> {
        check_dim(3, p)?;
        let f = self
            .ambient
            .f_value(p[0])
            .map_err(|e| OracleError::Metric {
                point: p.to_vec(),
                detail: e.to_string(),
            })?;
        let c = self.ambient.fiber_curvature();
        let s_c = if c > 0.0 {
            p[1].sin()
        } else if c < 0.0 {
            p[1].sinh()
        } else {
            1.0
        };
        let f2 = f * f;
        Ok(DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            1.0,
            f2,
            f2 * s_c * s_c,
        ])))
    }
}

fn check_dim(expected: usize, p: &[f64]) -> Result<(), OracleError> {
    if p.len() != expected {
        return Err(OracleError::Dimension {
            expected,
            found: p.len(),
        });
    }
    Ok(())
}

/// Richardson-extrapolated central difference of a matrix-valued function
/// along coordinate `i`.
fn partial<F>(f: &F, p: &[f64], i: usize, h: f64) -> Result<DMatrix<f64>, OracleError>
where
    F: Fn(&[f64]) -> Result<DMatrix<f64>, OracleError>,
{
    let mut q = p.to_vec();
    let mut at = |offset: f64| {
        q[i] = p[i] + offset;
        f(&q)
    };
    let d1 = (at(h)? - at(-h)?) / (2.0 * h);
    let d2 = (at(2.0 * h)? - at(-2.0 * h)?) / (4.0 * h);
    Ok((d1 * 4.0 - d2) / 3.0)
}

fn inverse(g: &DMatrix<f64>, p: &[f64]) -> Result<DMatrix<f64>, OracleError> {
    g.clone()
        .cholesky()
        .map(|c| c.inverse())
        .ok_or_else(|| OracleError::Singular { point: p.to_vec() })
}

/// Christoffel symbols `Γ^k_{ij}`, stored as `gamma[k][(i, j)]`.
pub fn christoffel_fd<M: ChartMetric + ?Sized>(
    m: &M,
    p: &[f64],
    step: f64,
) -> Result<Vec<DMatrix<f64>>, OracleError> {
    if !(step > 0.0) {
        return Err(OracleError::Step(step));
    }
    let n = m.dim();
    check_dim(n, p)?;
    let g = m.metric(p)?;
    let g_inv = inverse(&g, p)?;
    let metric = |q: &[f64]| m.metric(q);
    let dg: Vec<DMatrix<f64>> = (0..n)
        .map(|l| partial(&metric, p, l, step))
        .collect::<Result<_, _>>()?;
    // first-kind symbols Γ_{lij} = ½(∂_i g_{jl} + ∂_j g_{il} - ∂_l g_{ij})
    let mut gamma = vec![DMatrix::zeros(n, n); n];
    for k in 0..n {
        for i in 0..n {
            for j in i..n {
                let mut acc = 0.0;
                for l in 0..n {
                    let first = 0.5 * (dg[i][(j, l)] + dg[j][(i, l)] - dg[l][(i, j)]);
                    acc += g_inv[(k, l)] * first;
                }
                gamma[k][(i, j)] = acc;
                gamma[k][(j, i)] = acc;
            }
        }
    }
    Ok(gamma)
}

/// Riemann tensor with all indices down, `R_{abcd} = ⟨R(∂_c, ∂_d)∂_b, ∂_a⟩`,
/// so that `K(X, Y) = R_{abcd} X^a Y^b X^c Y^d / |X ∧ Y|²`.
#[derive(Debug, Clone, PartialEq)]
pub struct Riemann {
    n: usize,
    data: Vec<f64>,
}

impl Riemann {
    fn idx(&self, a: usize, b: usize, c: usize, d: usize) -> usize {
        ((a * self.n + b) * self.n + c) * self.n + d
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, a: usize, b: usize, c: usize, d: usize) -> f64 {
        self.data[self.idx(a, b, c, d)]
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// Largest violation of each algebraic symmetry, divided by
    /// `1 + max |R_{abcd}|`.
    pub fn symmetry_residuals(&self) -> SymmetryResiduals {
        let n = self.n;
        let scale = 1.0 + self.max_abs();
        let mut out = SymmetryResiduals::default();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let r = self.get(a, b, c, d);
                        out.first_pair = out.first_pair.max((r + self.get(b, a, c, d)).abs());
                        out.last_pair = out.last_pair.max((r + self.get(a, b, d, c)).abs());
                        out.pair_exchange = out.pair_exchange.max((r - self.get(c, d, a, b)).abs());
                        let cyclic = r + self.get(a, c, d, b) + self.get(a, d, b, c);
                        out.bianchi = out.bianchi.max(cyclic.abs());
                    }
                }
            }
        }
        out.first_pair /= scale;
        out.last_pair /= scale;
        out.pair_exchange /= scale;
        out.bianchi /= scale;
        out
    }

    /// `Ric_{bd} = g^{ac} R_{abcd}`.
    pub fn ricci(&self, g_inv: &DMatrix<f64>) -> DMatrix<f64> {
        let n = self.n;
        DMatrix::from_fn(n, n, |b, d| {
            let mut acc = 0.0;
            for a in 0..n {
                for c in 0..n {
                    acc += g_inv[(a, c)] * self.get(a, b, c, d);
                }
            }
            acc
        })
    }

    /// Sectional curvature of the plane spanned by `x`, `y`.
    pub fn sectional(&self, g: &DMatrix<f64>, x: &[f64], y: &[f64]) -> f64 {
        let n = self.n;
        let mut num = 0.0;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        num += self.get(a, b, c, d) * x[a] * y[b] * x[c] * y[d];
                    }
                }
            }
        }
        let dot = |u: &[f64], v: &[f64]| {
            let mut acc = 0.0;
            for i in 0..n {
                for j in 0..n {
                    acc += g[(i, j)] * u[i] * v[j];
                }
            }
            acc
        };
        num / (dot(x, x) * dot(y, y) - dot(x, y).powi(2))
    }
}

/// Relative residuals of the Riemann symmetries.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct SymmetryResiduals {
    pub first_pair: f64,
    pub last_pair: f64,
    pub pair_exchange: f64,
    pub bianchi: f64,
}

impl SymmetryResiduals {
    pub fn max(&self) -> f64 {
        self.first_pair
            .max(self.last_pair)
            .max(self.pair_exchange)
            .max(self.bianchi)
    }
}

/// `R^ρ_{σμν} = ∂_μ Γ^ρ_{νσ} - ∂_ν Γ^ρ_{μσ} + Γ^ρ_{μλ} Γ^λ_{νσ} - Γ^ρ_{νλ} Γ^λ_{μσ}`,
/// lowered with `g`.
pub fn riemann_fd<M: ChartMetric + ?Sized>(
    m: &M,
    p: &[f64],
    step: f64,
) -> Result<Riemann, OracleError> {
    let n = m.dim();
    let gamma = christoffel_fd(m, p, step)?;
    let g = m.metric(p)?;
    // derivative of each Γ^k along each coordinate, packed as one block matrix
    let packed = |q: &[f64]| -> Result<DMatrix<f64>, OracleError> {
        let gq = christoffel_fd(m, q, step)?;
        Ok(DMatrix::from_fn(n * n, n, |r, c| gq[r / n][(r % n, c)]))
    };
    let dgamma: Vec<DMatrix<f64>> = (0..n)
        .map(|mu| partial(&packed, p, mu, step))
        .collect::<Result<_, _>>()?;
    let d = |mu: usize, rho: usize, i: usize, j: usize| dgamma[mu][(rho * n + i, j)];

    let mut up = vec![0.0; n * n * n * n];
    let at = |r: usize, s: usize, mu: usize, nu: usize| ((r * n + s) * n + mu) * n + nu;
    for rho in 0..n {
        for sigma in 0..n {
            for mu in 0..n {
                for nu in 0..n {
                    let mut v = d(mu, rho, nu, sigma) - d(nu, rho, mu, sigma);
                    for l in 0..n {
                        v += gamma[rho][(mu, l)] * gamma[l][(nu, sigma)]
                            - gamma[rho][(nu, l)] * gamma[l][(mu, sigma)];
                    }
                    up[at(rho, sigma, mu, nu)] = v;
                }
            }
        }
    }
    let mut data = vec![0.0; n * n * n * n];
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for dd in 0..n {
                    let mut v = 0.0;
                    for r in 0..n {
                        v += g[(a, r)] * up[at(r, b, c, dd)];
                    }
                    data[at(a, b, c, dd)] = v;
                }
            }
        }
    }
    Ok(Riemann { n, data })
}

/// Orthonormal frame `F` with `Fᵀ g F = I` (columns are the frame vectors).
/// For a diagonal metric the frame is the normalized coordinate frame.
pub fn orthonormal_frame(g: &DMatrix<f64>, p: &[f64]) -> Result<DMatrix<f64>, OracleError> {
    let chol = g
        .clone()
        .cholesky()
        .ok_or_else(|| OracleError::Singular { point: p.to_vec() })?;
    let l_inv = chol
        .l()
        .try_inverse()
        .ok_or_else(|| OracleError::Singular { point: p.to_vec() })?;
    Ok(l_inv.transpose())
}

/// Ricci tensor in the orthonormal frame.
pub fn ricci_fd<M: ChartMetric + ?Sized>(
    m: &M,
    p: &[f64],
    step: f64,
) -> Result<DMatrix<f64>, OracleError> {
    let riemann = riemann_fd(m, p, step)?;
    let g = m.metric(p)?;
    let g_inv = inverse(&g, p)?;
    let frame = orthonormal_frame(&g, p)?;
    Ok(frame.transpose() * riemann.ricci(&g_inv) * frame)
}

/// Sectional curvature of the coordinate plane `(∂_i, ∂_j)`.
pub fn sectional_fd<M: ChartMetric + ?Sized>(
    m: &M,
    p: &[f64],
    i: usize,
    j: usize,
    step: f64,
) -> Result<f64, OracleError> {
    let n = m.dim();
    let riemann = riemann_fd(m, p, step)?;
    let g = m.metric(p)?;
    let mut x = vec![0.0; n];
    let mut y = vec![0.0; n];
    x[i] = 1.0;
    y[j] = 1.0;
    Ok(riemann.sectional(&g, &x, &y))
}

/// Hessian `∂_ij w - Γ^k_ij ∂_k w` of a scalar, in the orthonormal frame.
pub fn hessian_fd<M, W>(m: &M, w: W, p: &[f64], step: f64) -> Result<DMatrix<f64>, OracleError>
where
    M: ChartMetric + ?Sized,
    W: Fn(&[f64]) -> f64,
{
    let n = m.dim();
    let gamma = christoffel_fd(m, p, step)?;
    let g = m.metric(p)?;
    let scalar = |q: &[f64]| Ok(DMatrix::from_element(1, 1, w(q)));
    let grad: Vec<f64> = (0..n)
        .map(|k| partial(&scalar, p, k, step).map(|d| d[(0, 0)]))
        .collect::<Result<_, _>>()?;
    let mut hess = DMatrix::zeros(n, n);
    for i in 0..n {
        let di = |q: &[f64]| partial(&scalar, q, i, step);
        for j in 0..n {
            let mut v = partial(&di, p, j, step)?[(0, 0)];
            for k in 0..n {
                v -= gamma[k][(i, j)] * grad[k];
            }
            hess[(i, j)] = v;
        }
    }
    let frame = orthonormal_frame(&g, p)?;
    Ok(frame.transpose() * hess * frame)
}

/// Laplacian of a scalar: the trace of [`hessian_fd`].
pub fn laplacian_fd<M, W>(m: &M, w: W, p: &[f64], step: f64) -> Result<f64, OracleError>
where
    M: ChartMetric + ?Sized,
    W: Fn(&[f64]) -> f64,
{
    Ok(hessian_fd(m, w, p, step)?.trace())
}

/// `Δ v_k` for the fiber coordinate `v_k` (1-based) of a warped chart.
pub fn fiber_coordinate_laplacian<M: ChartMetric + ?Sized>(
    m: &M,
    k: usize,
    p: &[f64],
    step: f64,
) -> Result<f64, OracleError> {
    let max = m.dim() - 1;
    if k == 0 || k > max {
        return Err(OracleError::FiberIndex { k, max });
    }
    check_interior(p)?;
    laplacian_fd(m, |q| q[k], p, step)
}

/// Closed form of `Δ v_k` on `ds² + σ² g_{S^{n-1}}`:
/// `(n-1-k) cot v_k / (σ² ∏_{j<k} sin² v_j)`.
pub fn fiber_coordinate_laplacian_closed(n: usize, sigma: f64, k: usize, v: &[f64]) -> f64 {
    let factor = crate::rotational::sphere_factor(v, k);
    (n as f64 - 1.0 - k as f64) / v[k - 1].tan() / (sigma * sigma * factor)
}

/// Reject points whose polar angles sit on the chart singularities.
pub fn check_interior(p: &[f64]) -> Result<(), OracleError> {
    let polar = p.len().saturating_sub(2);
    for &v in &p[1..1 + polar] {
        if v.sin() < 0.05 {
            return Err(OracleError::ChartBoundary { point: p.to_vec() });
        }
    }
    Ok(())
}

/// Clamp the polar angles of `v` into `[GUARD, π - GUARD]`.
pub fn clamp_interior(v: &[f64]) -> Vec<f64> {
    let polar = v.len().saturating_sub(1);
    v.iter()
        .enumerate()
        .map(|(i, &a)| {
            if i < polar {
                a.clamp(INTERIOR_GUARD, PI - INTERIOR_GUARD)
            } else {
                a
            }
        })
        .collect()
}

/// Ricci tensor of a hypersurface from the closed form.
pub fn ricci_closed(
    surface: &Hypersurface,
    s: f64,
) -> Result<AxiTensor, crate::rotational::SurfaceError> {
    Ok(surface.geometry(s)?.ricci)
}

/// Hessian of a radial function `w` given as a jet at `s`.
pub fn hessian_radial(
    surface: &RotationalSurface,
    w: Jet2,
    s: f64,
) -> Result<AxiTensor, crate::rotational::SurfaceError> {
    let p = surface.point(s)?;
    Ok(radial_hessian(p.sigma, w))
}

pub fn laplacian_radial(
    surface: &RotationalSurface,
    w: Jet2,
    s: f64,
) -> Result<f64, crate::rotational::SurfaceError> {
    let p = surface.point(s)?;
    Ok(radial_laplacian(surface.n(), p.sigma, w))
}

/// Distinguished fiber direction of an orthonormal-frame matrix as an
/// [`AxiTensor`]: `ss = [0][0]`, `vv_k = [k][k]`, `vv_perp` the first other
/// fiber diagonal entry (equal to `vv_k` when `n = 2`).
pub fn frame_to_axi(m: &DMatrix<f64>, k: usize) -> AxiTensor {
    let n = m.nrows();
    let perp = (1..n).find(|&i| i != k).unwrap_or(k);
    AxiTensor::new(m[(0, 0)], m[(k, k)], m[(perp, perp)])
}

/// Largest off-diagonal entry.
pub fn off_diagonal_max(m: &DMatrix<f64>) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            if i != j {
                worst = worst.max(m[(i, j)].abs());
            }
        }
    }
    worst
}

/// One closed-form versus oracle comparison.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleRecord {
    pub s: f64,
    pub quantity: String,
    pub closed_form: f64,
    pub oracle: f64,
    pub abs_err: f64,
}

impl OracleRecord {
    pub fn new(s: f64, quantity: impl Into<String>, closed_form: f64, oracle: f64) -> Self {
        OracleRecord {
            s,
            quantity: quantity.into(),
            closed_form,
            oracle,
            abs_err: (closed_form - oracle).abs(),
        }
    }

    /// `|closed - oracle| ≤ tol (1 + |closed|)`.
    pub fn within(&self, tol: f64) -> bool {
        self.abs_err <= tol * (1.0 + self.closed_form.abs())
    }
}

/// `count` evaluation points spread over the interior of the surface's
/// parameter range. Rotational surfaces use grid nodes (keeping clear of the
/// ends so every stencil stays inside the range); slices use geodesic radii
/// between a fifth and four fifths of the chart's extent.
pub fn oracle_points(surface: &Hypersurface, count: usize) -> Vec<f64> {
    match surface {
        Hypersurface::Rotational(r) => {
            let grid = r.grid();
            let m = grid.len();
            let lo = (m / 20).max(1);
            let hi = m - 1 - lo;
            let count = count.min(hi - lo + 1).max(1);
            let mut idx: Vec<usize> = (0..count)
                .map(|i| {
                    if count == 1 {
                        (lo + hi) / 2
                    } else {
                        lo + ((hi - lo) as f64 * i as f64 / (count - 1) as f64).round() as usize
                    }
                })
                .collect();
            idx.dedup();
            idx.into_iter().map(|i| grid[i]).collect()
        }
        Hypersurface::Slice(sl) => {
            let r = sl.radius();
            let extent = if sl.ambient().fiber_curvature() > 0.0 {
                PI * r
            } else {
                4.0 * r
            };
            (0..count)
                .map(|i| extent * (0.2 + 0.6 * i as f64 / (count.max(2) - 1) as f64))
                .collect()
        }
    }
}

/// The oracle's view of one surface.
pub fn chart_for(surface: &Hypersurface) -> WarpedChart<'_> {
    match surface {
        Hypersurface::Rotational(r) => WarpedChart::rotational(r),
        Hypersurface::Slice(sl) => WarpedChart::slice(sl),
    }
}

/// Closed-form `σ` jet at `s` for either kind of surface, in the chart used
/// by [`chart_for`].
fn chart_sigma(surface: &Hypersurface, s: f64) -> Result<Jet2, OracleError> {
    match surface {
        Hypersurface::Rotational(r) => {
            r.point(s)
                .map(|p| p.sigma)
                .map_err(|e| OracleError::Metric {
                    point: vec![s],
                    detail: e.to_string(),
                })
        }
        Hypersurface::Slice(sl) => {
            let r = sl.radius();
            let x = Jet2::variable(s) * (1.0 / r);
            Ok(match sl.ambient().fiber_curvature() {
                c if c > 0.0 => x.sin() * r,
                c if c < 0.0 => x.sinh() * r,
                _ => Jet2::variable(s),
            })
        }
    }
}

/// Full comparison of closed forms against the finite-difference oracle at
/// `points`: Ricci components and off-diagonal leakage, Riemann symmetries,
/// the Hessian and Laplacian of the height (rotational only), `Δ v_k` for
/// every fiber index, and for `n = 2` the Gauss equation.
pub fn oracle_report(
    surface: &Hypersurface,
    points: &[f64],
    step: f64,
) -> Result<Vec<OracleRecord>, OracleError> {
    use rayon::prelude::*;
    let per_point: Vec<Vec<OracleRecord>> = points
        .par_iter()
        .map(|&s| oracle_at(surface, s, step))
        .collect::<Result<_, _>>()?;
    Ok(per_point.into_iter().flatten().collect())
}

fn oracle_at(surface: &Hypersurface, s: f64, step: f64) -> Result<Vec<OracleRecord>, OracleError> {
    let n = surface.n();
    let chart = chart_for(surface);
    let v = clamp_interior(&representative_angles(n));
    let mut p = vec![s];
    p.extend_from_slice(&v);
    let as_metric_err = |e: crate::rotational::SurfaceError| OracleError::Metric {
        point: vec![s],
        detail: e.to_string(),
    };
    let geo = surface.geometry(s).map_err(as_metric_err)?;
    let mut out = Vec::new();

    let riemann = riemann_fd(&chart, &p, step)?;
    let g = chart.metric(&p)?;
    let g_inv = inverse(&g, &p)?;
    let frame = orthonormal_frame(&g, &p)?;
    let ric = frame.transpose() * riemann.ricci(&g_inv) * &frame;
    let closed = geo.ricci;
    out.push(OracleRecord::new(s, "ricci.ss", closed.ss, ric[(0, 0)]));
    for i in 1..n {
        out.push(OracleRecord::new(
            s,
            format!("ricci.v{i}v{i}"),
            closed.vv_k,
            ric[(i, i)],
        ));
    }
    out.push(OracleRecord::new(
        s,
        "ricci.offdiag",
        0.0,
        off_diagonal_max(&ric),
    ));
    let sym = riemann.symmetry_residuals();
    out.push(OracleRecord::new(s, "riemann.symmetry", 0.0, sym.max()));

    if n == 2 {
        let k = riemann.sectional(&g, &[1.0, 0.0], &[0.0, 1.0]);
        let gauss = geo.k_radial_fiber + geo.shape.ss * geo.shape.vv_k;
        out.push(OracleRecord::new(s, "gauss.curvature", gauss, k));
    }

    if let Hypersurface::Rotational(r) = surface {
        let pt = r.point(s).map_err(as_metric_err)?;
        let height = |q: &[f64]| r.state_at(q[0]).map(|(z, _)| z).unwrap_or(f64::NAN);
        let hess = hessian_fd(&chart, height, &p, step)?;
        let closed = radial_hessian(pt.sigma, pt.zeta);
        out.push(OracleRecord::new(s, "hess_h.ss", closed.ss, hess[(0, 0)]));
        for i in 1..n {
            out.push(OracleRecord::new(
                s,
                format!("hess_h.v{i}v{i}"),
                closed.vv_k,
                hess[(i, i)],
            ));
        }
        out.push(OracleRecord::new(
            s,
            "laplacian_h",
            radial_laplacian(n, pt.sigma, pt.zeta),
            hess.trace(),
        ));
    }

    let sigma = chart_sigma(surface, s)?;
    for k in 1..n {
        let fd = fiber_coordinate_laplacian(&chart, k, &p, step)?;
        let closed = fiber_coordinate_laplacian_closed(n, sigma.value, k, &v);
        out.push(OracleRecord::new(s, format!("laplacian_v{k}"), closed, fd));
    }
    Ok(out)
}

/// Ambient sectional curvatures from the chart `(t, x_1, x_2)` against the
/// closed forms, at height `t` and fiber point `x_1`.
pub fn ambient_oracle(
    ambient: &Ambient,
    t: f64,
    x1: f64,
    step: f64,
) -> Result<[OracleRecord; 2], OracleError> {
    let chart = AmbientChart::new(ambient);
    let p = [t, x1, 0.0];
    let closed = ambient.sectional(t).map_err(|e| OracleError::Metric {
        point: p.to_vec(),
        detail: e.to_string(),
    })?;
    let riemann = riemann_fd(&chart, &p, step)?;
    let g = chart.metric(&p)?;
    let ktv = riemann.sectional(&g, &[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0]);
    let kvw = riemann.sectional(&g, &[0.0, 1.0, 0.0], &[0.0, 0.0, 1.0]);
    Ok([
        OracleRecord::new(t, "ambient.K_tV", closed.base_fiber, ktv),
        OracleRecord::new(t, "ambient.K_VW", closed.fiber_fiber, kvw),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::Expression;
    use crate::rotational::{build_surface, AngleProfile};

    fn warped(n: usize, sigma: fn(f64) -> f64) -> WarpedChart<'static> {
        WarpedChart::new(n, move |s| Ok(sigma(s)))
    }

    #[test]
    fn cylinder_christoffels_vanish() {
        let chart = warped(2, |_| 1.0);
        let gamma = christoffel_fd(&chart, &[0.7, 1.1], DEFAULT_STEP).unwrap();
        for block in &gamma {
            assert!(block.amax() < 1e-12);
        }
    }

    #[test]
    fn warped_christoffels_match_closed_form() {
        let chart = warped(2, |s| 1.0 + 0.3 * s * s);
        let s: f64 = 0.8;
        let sigma = 1.0 + 0.3 * s * s;
        let sigma1 = 0.6 * s;
        let gamma = christoffel_fd(&chart, &[s, 0.4], DEFAULT_STEP).unwrap();
        assert!((gamma[0][(1, 1)] + sigma * sigma1).abs() < 1e-6);
        assert!((gamma[1][(0, 1)] - sigma1 / sigma).abs() < 1e-6);
    }

    #[test]
    fn round_sphere_block() {
        let chart = warped(3, |_| 1.0);
        let v1: f64 = 0.9;
        let gamma = christoffel_fd(&chart, &[0.3, v1, 0.4], DEFAULT_STEP).unwrap();
        assert!((gamma[1][(2, 2)] + v1.sin() * v1.cos()).abs() < 1e-6);
    }

    #[test]
    fn unit_sphere_ricci() {
        for n in [2, 3] {
            let chart = warped(n, f64::sin);
            let mut p = vec![1.1];
            p.extend(clamp_interior(&representative_angles(n)));
            let ric = ricci_fd(&chart, &p, DEFAULT_STEP).unwrap();
            for i in 0..n {
                assert!((ric[(i, i)] - (n as f64 - 1.0)).abs() < 1e-6, "n={n} i={i}");
            }
            assert!(off_diagonal_max(&ric) < 1e-6);
            let sym = riemann_fd(&chart, &p, DEFAULT_STEP)
                .unwrap()
                .symmetry_residuals();
            assert!(sym.max() < 1e-6, "{sym:?}");
        }
    }

    #[test]
    fn fiber_laplacians() {
        let chart = warped(3, |s| 1.0 + s);
        for v1 in [0.4, 1.0, 2.2] {
            let p = [0.5, v1, 0.7];
            let last = fiber_coordinate_laplacian(&chart, 2, &p, DEFAULT_STEP).unwrap();
            assert!(last.abs() < 1e-6);
            let polar = fiber_coordinate_laplacian(&chart, 1, &p, DEFAULT_STEP).unwrap();
            let closed = fiber_coordinate_laplacian_closed(3, 1.5, 1, &[v1, 0.7]);
            assert!((polar - closed).abs() < 1e-6);
        }
        let circle = warped(2, |s| 2.0 + s.sin());
        assert!(
            fiber_coordinate_laplacian(&circle, 1, &[0.3, 1.0], DEFAULT_STEP)
                .unwrap()
                .abs()
                < 1e-8
        );
        assert!(matches!(
            fiber_coordinate_laplacian(&chart, 3, &[0.5, 1.0, 0.2], DEFAULT_STEP),
            Err(OracleError::FiberIndex { k: 3, max: 2 })
        ));
        assert!(matches!(
            fiber_coordinate_laplacian(&chart, 1, &[0.5, 0.0, 0.2], DEFAULT_STEP),
            Err(OracleError::ChartBoundary { .. })
        ));
    }

    #[test]
    fn hyperbolic_ambient_has_constant_curvature() {
        let a = Ambient::new(
            Expression::parse("exp(t)", "t").unwrap(),
            f64::NEG_INFINITY,
            f64::INFINITY,
            0.0,
            2,
        )
        .unwrap();
        for t in [-1.0, 0.0, 0.8] {
            let [ktv, kvw] = ambient_oracle(&a, t, 0.5, DEFAULT_STEP).unwrap();
            assert!((ktv.oracle + 1.0).abs() < 1e-6);
            assert!((kvw.oracle + 1.0).abs() < 1e-6);
        }
    }

    #[test]
    fn gudermannian_surface_report() {
        let profile =
            AngleProfile::new(Expression::parse("sech(s)", "s").unwrap(), 0.25, 3.0).unwrap();
        let gd = |s: f64| 2.0 * (s / 2.0).tanh().atan();
        let surf = build_surface(
            Ambient::euclidean_product(2),
            profile,
            0.25f64.cosh().ln(),
            gd(0.25),
            111,
        )
        .unwrap();
        let hs = Hypersurface::Rotational(surf);
        let points = oracle_points(&hs, 5);
        let report = oracle_report(&hs, &points, DEFAULT_STEP).unwrap();
        for rec in &report {
            assert!(rec.within(1e-5), "{rec:?}");
        }
        assert!(report.iter().any(|r| r.quantity == "gauss.curvature"));
    }

    #[test]
    fn slice_report() {
        let a = Ambient::new(
            Expression::parse("t", "t").unwrap(),
            0.0,
            f64::INFINITY,
            1.0,
            3,
        )
        .unwrap();
        let hs = Hypersurface::Slice(SliceSurface::new(a, 1.5).unwrap());
        let report = oracle_report(&hs, &oracle_points(&hs, 4), DEFAULT_STEP).unwrap();
        for rec in &report {
            assert!(rec.within(1e-5), "{rec:?}");
        }
    }
}

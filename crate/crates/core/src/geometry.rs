//! Pointwise geometric data shared by the surface builders, the oracle and
//! the structure equations.
//!
//! Every symmetric 2-tensor in this crate is diagonal in the adapted
//! orthonormal frame `{e0 = ∂s, e1..e_{n-1}}` of a rotational hypersurface, so
//! it is stored as an [`AxiTensor`]: the radial eigenvalue, the eigenvalue on
//! one distinguished fiber direction `k`, and the common eigenvalue on the
//! remaining `n-2` fiber directions.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::ambient::LogDerivatives;
use crate::jet::Jet2;

/// Diagonal symmetric 2-tensor in the adapted orthonormal frame.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct AxiTensor {
    pub ss: f64,
    pub vv_k: f64,
    pub vv_perp: f64,
}

impl AxiTensor {
    pub const ZERO: AxiTensor = AxiTensor {
        ss: 0.0,
        vv_k: 0.0,
        vv_perp: 0.0,
    };

    pub const fn new(ss: f64, vv_k: f64, vv_perp: f64) -> Self {
        Self { ss, vv_k, vv_perp }
    }

    /// Rotationally symmetric tensor: every fiber direction shares `vv`.
    pub const fn radial(ss: f64, vv: f64) -> Self {
        Self::new(ss, vv, vv)
    }

    /// Multiple of the metric.
    pub const fn scalar(value: f64) -> Self {
        Self::new(value, value, value)
    }

    /// Trace over an `n`-dimensional frame.
    pub fn trace(&self, n: usize) -> f64 {
        self.ss + self.vv_k + (n as f64 - 2.0) * self.vv_perp
    }

    /// Squared Hilbert-Schmidt norm over an `n`-dimensional frame.
    pub fn norm2(&self, n: usize) -> f64 {
        self.ss * self.ss + self.vv_k * self.vv_k + (n as f64 - 2.0) * self.vv_perp * self.vv_perp
    }

    /// The fiber eigenvalue used when a single fiber equation is needed:
    /// `vv_perp` when it exists (`n ≥ 3`), else `vv_k`.
    pub fn generic_fiber(&self, n: usize) -> f64 {
        if n >= 3 {
            self.vv_perp
        } else {
            self.vv_k
        }
    }

    /// Largest absolute component among the directions present for `n`.
    pub fn max_abs(&self, n: usize) -> f64 {
        let m = self.ss.abs().max(self.vv_k.abs());
        if n >= 3 {
            m.max(self.vv_perp.abs())
        } else {
            m
        }
    }

    pub fn map(self, f: impl Fn(f64) -> f64) -> Self {
        Self::new(f(self.ss), f(self.vv_k), f(self.vv_perp))
    }

    pub fn abs(self) -> Self {
        self.map(f64::abs)
    }
}

impl Add for AxiTensor {
    type Output = AxiTensor;
    fn add(self, o: AxiTensor) -> AxiTensor {
        AxiTensor::new(self.ss + o.ss, self.vv_k + o.vv_k, self.vv_perp + o.vv_perp)
    }
}

impl Sub for AxiTensor {
    type Output = AxiTensor;
    fn sub(self, o: AxiTensor) -> AxiTensor {
        AxiTensor::new(self.ss - o.ss, self.vv_k - o.vv_k, self.vv_perp - o.vv_perp)
    }
}

impl Mul<f64> for AxiTensor {
    type Output = AxiTensor;
    fn mul(self, c: f64) -> AxiTensor {
        self.map(|x| x * c)
    }
}

impl Neg for AxiTensor {
    type Output = AxiTensor;
    fn neg(self) -> AxiTensor {
        self.map(|x| -x)
    }
}

/// Ricci tensor of `ds² + σ(s)² g_{S^{n-1}}` in the orthonormal frame.
pub fn warped_ricci(n: usize, sigma: Jet2) -> AxiTensor {
    let nf = n as f64;
    let Jet2 {
        value: s,
        d1: s1,
        d2: s2,
    } = sigma;
    let ss = -(nf - 1.0) * s2 / s;
    let vv = -s2 / s + (nf - 2.0) * (1.0 - s1 * s1) / (s * s);
    AxiTensor::radial(ss, vv)
}

/// Hessian of a radial function `w(s)` on `ds² + σ² g_{S^{n-1}}`.
pub fn radial_hessian(sigma: Jet2, w: Jet2) -> AxiTensor {
    let ratio = sigma.d1 / sigma.value;
    AxiTensor::radial(w.d2, ratio * w.d1)
}

/// Laplacian of a radial function `w(s)`.
pub fn radial_laplacian(n: usize, sigma: Jet2, w: Jet2) -> f64 {
    w.d2 + (n as f64 - 1.0) * (sigma.d1 / sigma.value) * w.d1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SurfaceKind {
    Rotational,
    /// A level set `{t0} × M`; the height function is constant.
    Slice,
}

/// Everything the structure equations need at one point of a hypersurface,
/// with the intrinsic quantities already evaluated by closed forms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PointGeometry {
    pub kind: SurfaceKind,
    pub n: usize,
    pub s: f64,
    /// Angle function `θ = ⟨N, ∂t⟩` with its first two s-derivatives.
    pub theta: Jet2,
    /// Height `h = π_I ∘ φ` along the profile.
    pub height: Jet2,
    /// Warping data evaluated at `h`.
    pub warp: LogDerivatives,
    /// Induced warping `σ` of the intrinsic metric.
    pub sigma: Jet2,
    /// Principal curvatures (shape operator eigenvalues).
    pub shape: AxiTensor,
    /// Intrinsic Ricci tensor.
    pub ricci: AxiTensor,
    /// Intrinsic Hessian of the height function.
    pub hess_h: AxiTensor,
    /// Ambient sectional curvature of the plane `(e0, e_i)`.
    pub k_radial_fiber: f64,
    /// Ambient sectional curvature of the plane `(e_i, e_j)`.
    pub k_fiber_fiber: f64,
}

impl PointGeometry {
    /// `|∇h|² = 1 - θ²`.
    pub fn grad_h_norm2(&self) -> f64 {
        match self.kind {
            SurfaceKind::Rotational => 1.0 - self.theta.value * self.theta.value,
            SurfaceKind::Slice => 0.0,
        }
    }

    /// `dh ⊗ dh` in the frame.
    pub fn dh_dh(&self) -> AxiTensor {
        AxiTensor::new(self.grad_h_norm2(), 0.0, 0.0)
    }

    pub fn mean_curvature(&self) -> f64 {
        self.shape.trace(self.n) / self.n as f64
    }

    /// `|A|² - nH²`, the squared norm of the traceless shape operator.
    pub fn traceless_norm2(&self) -> f64 {
        let h = self.mean_curvature();
        (self.shape.norm2(self.n) - self.n as f64 * h * h).max(0.0)
    }

    /// `σ'/σ`.
    pub fn sigma_ratio(&self) -> f64 {
        self.sigma.d1 / self.sigma.value
    }

    /// Sum of ambient sectional curvatures over ordered frame pairs `i ≠ j`.
    pub fn ambient_scalar_sum(&self) -> f64 {
        let nf = self.n as f64;
        2.0 * (nf - 1.0) * self.k_radial_fiber + (nf - 1.0) * (nf - 2.0) * self.k_fiber_fiber
    }

    /// Ricci tensor from the Gauss equation: ambient curvature plus
    /// `nH A - A²`.
    pub fn gauss_ricci(&self) -> AxiTensor {
        let nf = self.n as f64;
        let a = self.shape;
        let nh = a.trace(self.n);
        let ambient = AxiTensor::radial(
            (nf - 1.0) * self.k_radial_fiber,
            self.k_radial_fiber + (nf - 2.0) * self.k_fiber_fiber,
        );
        ambient
            + AxiTensor::new(
                nh * a.ss - a.ss * a.ss,
                nh * a.vv_k - a.vv_k * a.vv_k,
                nh * a.vv_perp - a.vv_perp * a.vv_perp,
            )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cylinder_ricci_and_hessian() {
        let sigma = Jet2::constant(1.0);
        let ric = warped_ricci(3, sigma);
        assert_eq!(ric, AxiTensor::radial(0.0, 1.0));
        let h = radial_hessian(sigma, Jet2::new(2.0, 1.0, 0.0));
        assert_eq!(h, AxiTensor::ZERO);
    }

    #[test]
    fn unit_sphere_as_warped_metric() {
        // σ = sin s gives the round sphere: Ricci = (n-1) g.
        for n in 2..6 {
            let s = 0.7f64;
            let ric = warped_ricci(n, Jet2::new(s.sin(), s.cos(), -s.sin()));
            let expected = n as f64 - 1.0;
            assert!((ric.ss - expected).abs() < 1e-14);
            assert!((ric.vv_k - expected).abs() < 1e-14);
        }
    }

    #[test]
    fn trace_and_norm_count_fiber_directions() {
        let t = AxiTensor::new(1.0, 2.0, 3.0);
        assert_eq!(t.trace(2), 3.0);
        assert_eq!(t.trace(4), 1.0 + 2.0 + 6.0);
        assert_eq!(t.norm2(3), 1.0 + 4.0 + 9.0);
        assert_eq!(t.max_abs(2), 2.0);
        assert_eq!(t.generic_fiber(2), 2.0);
        assert_eq!(t.generic_fiber(5), 3.0);
    }
}

//! The rotational classification as printed: the two scalar equations that
//! characterize a structure on a rotational hypersurface of `ℝ ×_f ℝ^n`, and
//! the closed forms for `(λ, μ)` in the base-radial and fiber-linear cases.
//!
//! These are evaluated literally so they can be compared with the solver; no
//! term is corrected here.

use serde::{Deserialize, Serialize};

use super::{EinsteinTypeStructure, StructureError, UMap};
use crate::geometry::{PointGeometry, SurfaceKind};

/// Residuals `(radial, fiber)` of the two scalar equations at a point:
/// the radial equation solved for `λ`, and the fiber equation in the form
/// `λ - f'/f - θ κ = (n-2) κ² - (1-θ²)(log f)'' + …` with `κ` the fiber
/// principal curvature. `u_s = du(φ_s)` and `u_v = du(φ_{v_i})` are
/// coordinate derivatives of `u`.
pub fn system_residuals(
    g: &PointGeometry,
    alpha: f64,
    lambda: f64,
    mu: f64,
    u_s: f64,
    u_v: f64,
) -> (f64, f64) {
    let nf = g.n as f64;
    let theta = g.theta.value;
    let theta1 = g.theta.d1;
    let root = (1.0 - theta * theta).sqrt();
    let sigma = g.sigma.value;
    let w = g.warp;
    let (l1, l2) = (w.log1, w.log2);

    // |τ u|² / (1 - θ²) with τ u = √(1-θ²) du(φ_s)
    let tau_term = u_s * u_s;
    let radial_rhs = -(nf - 1.0) * (1.0 - theta * theta) * w.f2 / w.f
        - (nf - 1.0) * theta * root / sigma * l1
        + ((nf - 1.0) * (theta * l1 - root / sigma) - theta) * theta1 / root
        - alpha * tau_term
        - mu * (1.0 - theta * theta);
    let radial = lambda - radial_rhs;

    let kappa = root / sigma - l1 * theta;
    let lhs = lambda - l1 - theta * kappa;
    let rhs = (nf - 2.0) * kappa * kappa - (1.0 - theta * theta) * l2
        + (theta * theta - (nf - 1.0)) * l1 * l1
        - l1 * theta * root / sigma
        - theta1 / sigma
        + theta1 / root * l1 * theta
        - alpha * u_v * u_v / (sigma * sigma);
    (radial, lhs - rhs)
}

fn common_lambda(g: &PointGeometry) -> f64 {
    let nf = g.n as f64;
    let theta = g.theta.value;
    let theta1 = g.theta.d1;
    let w2 = 1.0 - theta * theta;
    let root = w2.sqrt();
    let sigma = g.sigma.value;
    let (l1, l2) = (g.warp.log1, g.warp.log2);
    -w2 * l2 - w2 * (nf - 1.0) * l1 * l1
        + (w2 - (2.0 * nf + 3.0) * theta * root / sigma + theta * theta1 / root) * l1
        + (theta * root - theta1) / sigma
        + (nf - 2.0) * w2 / (sigma * sigma)
}

fn common_mu(g: &PointGeometry) -> f64 {
    let nf = g.n as f64;
    let theta = g.theta.value;
    let theta1 = g.theta.d1;
    let w2 = 1.0 - theta * theta;
    let root = w2.sqrt();
    let sigma = g.sigma.value;
    let (l1, l2) = (g.warp.log1, g.warp.log2);
    let w32 = w2.powf(1.5);
    -(nf - 2.0) * l2
        - (1.0 - (nf + 4.0) * theta / (sigma * root) - (nf - 2.0) * theta * theta1 * w32) * l1
        - (theta * root - (nf - 2.0) * theta1) / (sigma * w2)
        + theta * theta1 * w32
        - (nf - 2.0) / (sigma * sigma)
}

/// Printed `(λ, μ)` for `u = u(s)` with `u' = u1`.
pub fn printed_radial(g: &PointGeometry, alpha: f64, u1: f64) -> (f64, f64) {
    let w2 = 1.0 - g.theta.value.powi(2);
    (common_lambda(g), common_mu(g) - alpha * u1 * u1 / w2)
}

/// Printed `(λ, μ)` for `u = c4 v_k + c5`.
pub fn printed_fiber(g: &PointGeometry, alpha: f64, c4: f64) -> (f64, f64) {
    let w2 = 1.0 - g.theta.value.powi(2);
    let s2 = g.sigma.value.powi(2);
    (
        common_lambda(g) - alpha * c4 * c4 / s2,
        common_mu(g) + alpha * c4 * c4 / (w2 * s2),
    )
}

/// Solver output next to the printed forms at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PrintedComparison {
    pub s: f64,
    pub solver_lambda: f64,
    pub solver_mu: f64,
    pub printed_lambda: f64,
    pub printed_mu: f64,
    /// Printed scalar equations evaluated at the solver's `(λ, μ)`.
    pub system_radial: f64,
    pub system_fiber: f64,
}

/// Compare the printed classification against the solver over the grid.
/// Returns nothing for slices, which the classification does not cover.
pub fn compare_printed(
    st: &EinsteinTypeStructure,
) -> Result<Vec<PrintedComparison>, StructureError> {
    let mut out = Vec::new();
    for s in st.grid() {
        let e = st.evaluate(s)?;
        let g = &e.geometry;
        if g.kind == SurfaceKind::Slice {
            return Ok(out);
        }
        let solved = st.solve_lambda_mu(s)?;
        let (u_s, u_v, printed) = match st.u() {
            UMap::FiberLinear { c4, .. } => (0.0, *c4, printed_fiber(g, st.alpha(), *c4)),
            _ => {
                let u1 = e.u.radial.d1;
                (u1, 0.0, printed_radial(g, st.alpha(), u1))
            }
        };
        let (system_radial, system_fiber) =
            system_residuals(g, st.alpha(), solved.lambda, solved.mu, u_s, u_v);
        out.push(PrintedComparison {
            s,
            solver_lambda: solved.lambda,
            solver_mu: solved.mu,
            printed_lambda: printed.0,
            printed_mu: printed.1,
            system_radial,
            system_fiber,
        });
    }
    Ok(out)
}

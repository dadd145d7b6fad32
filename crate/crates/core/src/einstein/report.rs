use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Convention, EinsteinTypeStructure, PointEval, StructureError, UMap};
use crate::geometry::AxiTensor;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridResidual {
    pub s: f64,
    pub components: BTreeMap<String, f64>,
}

/// Residuals of one equation over the grid. `max` and `mean` are taken over
/// the gated components of each point; `mean` averages the per-point maxima.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquationReport {
    pub equation: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub convention: Option<String>,
    pub grid: Vec<GridResidual>,
    pub max: f64,
    pub mean: f64,
    pub pass: bool,
    /// Whether this equation decides the overall verdict.
    pub gated: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub tolerance: f64,
    pub pass: bool,
    pub equations: Vec<EquationReport>,
}

impl ResidualReport {
    pub fn equation(&self, name: &str, convention: Option<Convention>) -> Option<&EquationReport> {
        let conv = convention.map(|c| c.to_string());
        self.equations
            .iter()
            .find(|e| e.equation == name && e.convention == conv)
    }
}

/// Signed margins at one grid point; a margin is nonnegative exactly when
/// the corresponding hypothesis holds there.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MarginRow {
    pub s: f64,
    /// `H` (lower bound `0 ≤ H`).
    pub mean_curvature: f64,
    /// `(log f)'(h) - H`.
    pub mean_curvature_upper: f64,
    /// `λ - [f'/f - (n-1) f''/f + |μ + f'/f| + H(nH + θ)]`.
    pub constant_map: f64,
    /// `(nH + θ)² + 4[f'/f - (n-1) f''/f - λ]`.
    pub discriminant: f64,
    /// Principal curvature along `∇h`.
    pub rho: f64,
    /// Distance of `ρ` outside the open root interval when the discriminant
    /// is positive.
    pub rho_margin: Option<f64>,
    /// `μ + f'/f`.
    pub mu_plus_log1: f64,
    /// `f'² - f f'' - c`.
    pub fiber_curvature: f64,
    /// `|Φ|²`.
    pub traceless_norm2: f64,
}

#[derive(Clone, Copy)]
enum Form {
    Intrinsic,
    Extrinsic,
}

struct Builder {
    equation: &'static str,
    convention: Option<Convention>,
    gated: bool,
    grid: Vec<GridResidual>,
    maxima: Vec<f64>,
}

impl Builder {
    fn new(equation: &'static str, convention: Option<Convention>, gated: bool) -> Self {
        Builder {
            equation,
            convention,
            gated,
            grid: Vec::new(),
            maxima: Vec::new(),
        }
    }

    fn push(&mut self, s: f64, components: Vec<(&str, f64, bool)>) {
        let mut worst = 0.0f64;
        let mut map = BTreeMap::new();
        for (name, value, counts) in components {
            if counts {
                worst = worst.max(value);
            }
            map.insert(name.to_string(), value);
        }
        self.grid.push(GridResidual { s, components: map });
        self.maxima.push(worst);
    }

    fn finish(self, tol: f64) -> EquationReport {
        let max = self.maxima.iter().fold(0.0f64, |m, &x| m.max(x));
        let mean = if self.maxima.is_empty() {
            0.0
        } else {
            self.maxima.iter().sum::<f64>() / self.maxima.len() as f64
        };
        EquationReport {
            equation: self.equation.to_string(),
            convention: self.convention.map(|c| c.to_string()),
            grid: self.grid,
            max,
            mean,
            pass: max < tol,
            gated: self.gated,
        }
    }
}

impl EinsteinTypeStructure {
    fn report(
        &self,
        evals: &[PointEval],
        tol: f64,
        gate_tau: &[Convention],
        form: Form,
    ) -> ResidualReport {
        let n = self.n();
        let fiber_linear = matches!(self.u, UMap::FiberLinear { .. }) && n >= 3;
        let name = match form {
            Form::Intrinsic => "structure",
            Form::Extrinsic => "structure_extrinsic",
        };
        let mut tensor = Builder::new(name, None, true);
        let mut consistency = fiber_linear.then(|| Builder::new("fiber_consistency", None, false));
        let mut taus: Vec<Builder> = Convention::BOTH
            .iter()
            .map(|&c| Builder::new("tau", Some(c), gate_tau.contains(&c)))
            .collect();

        for e in evals {
            let r: AxiTensor = match form {
                Form::Intrinsic => e.residual_eq0001(),
                Form::Extrinsic => e.residual_prop1(),
            }
            .abs();
            let mut comps = vec![("ss", r.ss, true), ("vv_k", r.vv_k, !fiber_linear)];
            if n >= 3 {
                comps.push(("vv_perp", r.vv_perp, true));
            }
            tensor.push(e.s(), comps);
            if let Some(b) = consistency.as_mut() {
                b.push(e.s(), vec![("vv_k", r.vv_k, true)]);
            }
            for b in &mut taus {
                let c = b.convention.expect("tau carries a convention");
                b.push(e.s(), vec![("tau", e.u.tau_residual(c), true)]);
            }
        }

        let mut equations = vec![tensor.finish(tol)];
        equations.extend(consistency.map(|b| b.finish(tol)));
        equations.extend(taus.into_iter().map(|b| b.finish(tol)));
        let pass = equations.iter().filter(|e| e.gated).all(|e| e.pass);
        ResidualReport {
            tolerance: tol,
            pass,
            equations,
        }
    }

    /// Residuals of the defining system with the intrinsic Hessian of `h`.
    /// Tau residuals are always listed for both conventions; only those in
    /// `gate_tau` enter the verdict.
    pub fn residual_eq0001(
        &self,
        tol: f64,
        gate_tau: &[Convention],
    ) -> Result<ResidualReport, StructureError> {
        let evals = self.evaluate_grid()?;
        Ok(self.report(&evals, tol, gate_tau, Form::Intrinsic))
    }

    /// Residuals of the extrinsic form `Ric^u = (λ - f'/f) g + (μ + f'/f) dh⊗dh - θA`.
    pub fn residual_prop1(
        &self,
        tol: f64,
        gate_tau: &[Convention],
    ) -> Result<ResidualReport, StructureError> {
        let evals = self.evaluate_grid()?;
        Ok(self.report(&evals, tol, gate_tau, Form::Extrinsic))
    }
}

pub fn residual_eq0001(
    st: &EinsteinTypeStructure,
    tol: f64,
    gate_tau: &[Convention],
) -> Result<ResidualReport, StructureError> {
    st.residual_eq0001(tol, gate_tau)
}

pub fn residual_prop1(
    st: &EinsteinTypeStructure,
    tol: f64,
    gate_tau: &[Convention],
) -> Result<ResidualReport, StructureError> {
    st.residual_prop1(tol, gate_tau)
}

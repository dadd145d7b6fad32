//! JSON scenario files: ambient, hypersurface, structure data and grid.
//!
//! ```json
//! {
//!   "ambient": { "f": "1", "t_range": [-100, 100], "fiber_curvature": 0, "n": 2 },
//!   "profile": { "theta": "sech(s)", "s_range": [0.25, 3], "zeta0": 0.0314, "beta0": 0.2487 },
//!   "structure": {
//!     "alpha": 1,
//!     "u": { "mode": "base-radial", "expr": "sinh(s)" },
//!     "mu": "solve",
//!     "lambda": "solve"
//!   },
//!   "grid": { "points": 201, "tolerance": 1e-10, "verify_tolerance": 1e-6 }
//! }
//! ```
//!
//! Exactly one of `profile` or `slice` (`{ "t0": 1 }`) is given. A `null`
//! endpoint in `t_range` means the interval is unbounded on that side.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ambient::Ambient;
use crate::einstein::{
    solve_u_base, EinsteinTypeStructure, RadialU, ScalarField, StructureError, UMap,
};
use crate::expr::Expression;
use crate::rotational::{
    AngleProfile, Hypersurface, RotationalSurface, SliceSurface, SurfaceError, TauConvention,
    DEFAULT_TOLERANCE,
};

#[derive(Debug, Error)]
pub enum ScenarioError {
    /// Malformed or inadmissible configuration.
    #[error("config error at `{key}`: {message}")]
    Config { key: String, message: String },
    /// The configuration is well formed but the numerics failed.
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Structure(StructureError),
}

impl ScenarioError {
    fn config(key: &str, message: impl ToString) -> Self {
        ScenarioError::Config {
            key: key.to_string(),
            message: message.to_string(),
        }
    }

    pub fn is_config(&self) -> bool {
        matches!(self, ScenarioError::Config { .. })
    }
}

impl From<StructureError> for ScenarioError {
    fn from(e: StructureError) -> Self {
        match e {
            StructureError::Alpha(_) => ScenarioError::config("structure.alpha", e),
            StructureError::FiberIndex { .. } => ScenarioError::config("structure.u.k", e),
            StructureError::Mode { .. } => ScenarioError::config("structure.u.mode", e),
            StructureError::Angles { .. } => ScenarioError::config("structure.angles", e),
            StructureError::Surface(s) => ScenarioError::Surface(s),
            other => ScenarioError::Structure(other),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AmbientConfig {
    pub f: String,
    pub t_range: [Option<f64>; 2],
    pub fiber_curvature: f64,
    pub n: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileConfig {
    pub theta: String,
    pub s_range: [f64; 2],
    pub zeta0: f64,
    pub beta0: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SliceConfig {
    pub t0: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolveUConfig {
    pub c2: f64,
    pub c3: f64,
    pub convention: TauConvention,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode")]
pub enum UConfig {
    #[serde(rename = "constant")]
    Constant {
        #[serde(default)]
        value: f64,
    },
    /// Exactly one of `expr` (a closed form in `s`) or `solve`.
    #[serde(rename = "base-radial")]
    BaseRadial {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        expr: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        solve: Option<SolveUConfig>,
    },
    #[serde(rename = "fiber-linear")]
    FiberLinear {
        k: usize,
        c4: f64,
        #[serde(default)]
        c5: f64,
    },
    #[serde(rename = "isometric-identity")]
    IsometricIdentity,
}

/// `"solve"`, a closed form in `s`, or a number.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldConfig {
    Number(f64),
    Text(String),
}

impl FieldConfig {
    pub fn solve() -> Self {
        FieldConfig::Text("solve".into())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureConfig {
    pub alpha: f64,
    pub u: UConfig,
    pub mu: FieldConfig,
    pub lambda: FieldConfig,
    /// Fiber point for fiber-dependent quantities; defaults to `π/3` in
    /// every angle.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub angles: Option<Vec<f64>>,
}

fn default_points() -> usize {
    201
}
fn default_tolerance() -> f64 {
    DEFAULT_TOLERANCE
}
fn default_verify_tolerance() -> f64 {
    1e-6
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    #[serde(default = "default_points")]
    pub points: usize,
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
    #[serde(default = "default_verify_tolerance")]
    pub verify_tolerance: f64,
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig {
            points: default_points(),
            tolerance: default_tolerance(),
            verify_tolerance: default_verify_tolerance(),
        }
    }
}

fn default_mesh_s() -> usize {
    100
}
fn default_mesh_v() -> usize {
    60
}
fn default_oracle_points() -> usize {
    20
}
fn default_fd_step() -> f64 {
    crate::oracle::DEFAULT_STEP
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputsConfig {
    /// Profile samples along `s` in the mesh.
    #[serde(default = "default_mesh_s")]
    pub mesh_s_points: usize,
    /// Samples per fiber angle in the mesh.
    #[serde(default = "default_mesh_v")]
    pub mesh_v_points: usize,
    #[serde(default = "default_oracle_points")]
    pub oracle_points: usize,
    #[serde(default = "default_fd_step")]
    pub fd_step: f64,
}

impl Default for OutputsConfig {
    fn default() -> Self {
        OutputsConfig {
            mesh_s_points: default_mesh_s(),
            mesh_v_points: default_mesh_v(),
            oracle_points: default_oracle_points(),
            fd_step: default_fd_step(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub ambient: AmbientConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub profile: Option<ProfileConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slice: Option<SliceConfig>,
    pub structure: StructureConfig,
    #[serde(default)]
    pub grid: GridConfig,
    #[serde(default)]
    pub outputs: OutputsConfig,
}

fn parse(key: &str, text: &str, var: &str) -> Result<Expression, ScenarioError> {
    Expression::parse(text, var).map_err(|e| ScenarioError::config(key, e))
}

fn field(key: &str, f: &FieldConfig) -> Result<ScalarField, ScenarioError> {
    match f {
        FieldConfig::Number(x) => Ok(ScalarField::Constant(*x)),
        FieldConfig::Text(t) if t.trim() == "solve" => Ok(ScalarField::Solve),
        FieldConfig::Text(t) => Ok(ScalarField::Expr(parse(key, t, "s")?)),
    }
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Scenario, ScenarioError> {
        serde_json::from_str(text).map_err(|e| ScenarioError::config("<root>", e))
    }

    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("scenario serializes");
        serde_json::to_string_pretty(&value).expect("value serializes")
    }

    pub fn ambient(&self) -> Result<Ambient, ScenarioError> {
        let a = &self.ambient;
        let f = parse("ambient.f", &a.f, "t")?;
        let lo = a.t_range[0].unwrap_or(f64::NEG_INFINITY);
        let hi = a.t_range[1].unwrap_or(f64::INFINITY);
        Ambient::new(f, lo, hi, a.fiber_curvature, a.n)
            .map_err(|e| ScenarioError::config("ambient", e))
    }

    pub fn surface(&self) -> Result<Hypersurface, ScenarioError> {
        let ambient = self.ambient()?;
        match (&self.profile, &self.slice) {
            (Some(p), None) => {
                let theta = parse("profile.theta", &p.theta, "s")?;
                let profile = AngleProfile::new(theta, p.s_range[0], p.s_range[1])
                    .map_err(|e| ScenarioError::config("profile.s_range", e))?;
                let g = &self.grid;
                if g.points < crate::rotational::MIN_GRID_POINTS {
                    return Err(ScenarioError::config(
                        "grid.points",
                        SurfaceError::GridTooSmall(g.points),
                    ));
                }
                if !(g.tolerance > 0.0) {
                    return Err(ScenarioError::config(
                        "grid.tolerance",
                        SurfaceError::Tolerance(g.tolerance),
                    ));
                }
                if ambient.fiber_curvature() != 0.0 {
                    return Err(ScenarioError::config(
                        "ambient.fiber_curvature",
                        SurfaceError::UnsupportedFiber(ambient.fiber_curvature()),
                    ));
                }
                let r = RotationalSurface::build(
                    ambient,
                    profile,
                    p.zeta0,
                    p.beta0,
                    g.points,
                    g.tolerance,
                )?;
                Ok(Hypersurface::Rotational(r))
            }
            (None, Some(sl)) => {
                let slice = SliceSurface::new(ambient, sl.t0)
                    .map_err(|e| ScenarioError::config("slice.t0", e))?;
                Ok(Hypersurface::Slice(slice))
            }
            _ => Err(ScenarioError::config(
                "profile",
                "exactly one of `profile` and `slice` must be given",
            )),
        }
    }

    /// Build the surface and attach the structure data.
    pub fn build(&self) -> Result<EinsteinTypeStructure, ScenarioError> {
        let surface = self.surface()?;
        let st = &self.structure;
        let u = match &st.u {
            UConfig::Constant { value } => UMap::Constant(*value),
            UConfig::IsometricIdentity => UMap::IsometricIdentity,
            UConfig::FiberLinear { k, c4, c5 } => UMap::FiberLinear {
                k: *k,
                c4: *c4,
                c5: *c5,
            },
            UConfig::BaseRadial { expr, solve } => match (expr, solve) {
                (Some(e), None) => {
                    UMap::BaseRadial(RadialU::Expr(parse("structure.u.expr", e, "s")?))
                }
                (None, Some(sv)) => {
                    let Hypersurface::Rotational(r) = &surface else {
                        return Err(ScenarioError::config(
                            "structure.u.mode",
                            "base-radial maps need a rotational profile",
                        ));
                    };
                    solve_u_base(r, sv.c2, sv.c3, sv.convention)?
                }
                _ => {
                    return Err(ScenarioError::config(
                        "structure.u",
                        "base-radial needs exactly one of `expr` and `solve`",
                    ))
                }
            },
        };
        let mu = field("structure.mu", &st.mu)?;
        let lambda = field("structure.lambda", &st.lambda)?;
        let mut structure = EinsteinTypeStructure::new(surface, st.alpha, u, mu, lambda)?;
        if let Some(angles) = &st.angles {
            structure = structure.with_angles(angles.clone())?;
        }
        Ok(structure)
    }
}

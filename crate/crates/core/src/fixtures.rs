//! The worked examples as ready-made scenarios, together with the closed
//! forms printed for them so solver output can be compared as data.
//!
//! | name             | surface                                   | u                      |
//! |------------------|-------------------------------------------|------------------------|
//! | `sphere_slice`   | slice `{t0} × 𝕊ⁿ` of `(0,∞) ×_t 𝕊ⁿ`       | identity               |
//! | `gudermannian`   | `θ = √(1 - tanh² s)` in `ℝ × ℝⁿ`           | `sinh s`               |
//! | `constant_angle` | `θ ≡ θ₀`, `σ = θ₀ s + c₁`                  | solved, `u'' = h'u'` |
//! | `fiber_map`      | `θ = cos² s`                              | `c₁ v_k`               |
//! | `cylinder`       | `θ ≡ 0`, `σ ≡ 1`                           | constant               |
//! | `cone`           | `θ ≡ θ₀`, `σ = θ₀ s`                       | constant               |

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::einstein::{EinsteinTypeStructure, StructureError, UMap};
use crate::expr::Expression;
use crate::rotational::TauConvention;
use crate::scenario::{
    AmbientConfig, FieldConfig, GridConfig, OutputsConfig, ProfileConfig, Scenario, ScenarioError,
    SliceConfig, SolveUConfig, StructureConfig, UConfig,
};

pub const FIXTURE_NAMES: [&str; 6] = [
    "sphere_slice",
    "gudermannian",
    "constant_angle",
    "fiber_map",
    "cylinder",
    "cone",
];

#[derive(Debug, Error)]
pub enum FixtureError {
    #[error("unknown fixture `{0}`")]
    Unknown(String),
    #[error("fixture parameter `{name}` = {value}: {reason}")]
    Param {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },
    #[error(transparent)]
    Scenario(#[from] ScenarioError),
    #[error(transparent)]
    Structure(#[from] StructureError),
}

/// Overrides for the default parameters; `None` keeps the default.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct FixtureParams {
    pub n: Option<usize>,
    pub alpha: Option<f64>,
    pub points: Option<usize>,
    /// `θ₀` for the constant-angle surfaces.
    pub theta0: Option<f64>,
    /// `c₁`: the σ offset for `constant_angle`, the slope of `u` for `fiber_map`.
    pub c1: Option<f64>,
    /// Fiber index of `u` for `fiber_map`.
    pub k: Option<usize>,
    /// Slice height for `sphere_slice`.
    pub t0: Option<f64>,
    /// Parameter range `[lo, hi]`.
    pub s_range: Option<[f64; 2]>,
}

/// Closed forms printed for a fixture, with all constants substituted.
/// Each is an expression in `s`; forms that are not functions of `s` alone
/// are kept in `notes`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct PrintedForms {
    pub lambda: Option<String>,
    pub mu: Option<String>,
    pub u: Option<String>,
    pub h: Option<String>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FixtureInfo {
    pub name: String,
    pub description: String,
    pub defaults: String,
}

#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: String,
    pub scenario: Scenario,
    pub expectations: PrintedForms,
}

/// Solver output next to the printed forms at one point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpectationRow {
    pub s: f64,
    pub solver_lambda: f64,
    pub solver_mu: f64,
    pub printed_lambda: Option<f64>,
    pub printed_mu: Option<f64>,
    pub u: Option<f64>,
    pub printed_u: Option<f64>,
    /// Height from quadrature.
    pub h: f64,
    pub printed_h: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpectationComparison {
    pub rows: Vec<ExpectationRow>,
    /// Largest `|solver - printed| / (1 + |printed|)` for each form.
    pub lambda_max: Option<f64>,
    pub mu_max: Option<f64>,
    pub u_max: Option<f64>,
    /// Least-squares constant `c` in `h ≈ printed_h + c`, and the largest
    /// deviation once it is removed.
    pub h_offset: Option<f64>,
    pub h_max: Option<f64>,
}

pub fn list() -> Vec<FixtureInfo> {
    let info = |name: &str, description: &str, defaults: &str| FixtureInfo {
        name: name.into(),
        description: description.into(),
        defaults: defaults.into(),
    };
    vec![
        info(
            "sphere_slice",
            "slice {t0} x S^n of (0,inf) x_t S^n with the identity map",
            "n=3 alpha=0.5 t0=1",
        ),
        info(
            "gudermannian",
            "theta = sqrt(1-tanh(s)^2), sigma = gd(s), u = sinh(s)",
            "n=2 alpha=1 s in [0.25, 3] points=201",
        ),
        info(
            "constant_angle",
            "theta = theta0, sigma = theta0*s + c1, u solved from u'' = h' u'",
            "n=3 alpha=1 theta0=0.6 c1=1 s in [0.5, 5] points=201",
        ),
        info(
            "fiber_map",
            "theta = cos(s)^2, u = c1*v_k",
            "n=3 alpha=1 c1=0.5 k=2 s in [0.3, pi-0.3] points=201",
        ),
        info(
            "cylinder",
            "theta = 0, sigma = 1, u constant",
            "n=3 alpha=1 s in [0, 4] points=201",
        ),
        info(
            "cone",
            "theta = theta0, sigma = theta0*s, u constant",
            "n=3 alpha=1 theta0=0.6 s in [0.5, 5] points=201",
        ),
    ]
}

/// Shortest round-trip form, parenthesized so it can be spliced anywhere.
fn num(x: f64) -> String {
    format!("({x})")
}

fn flat(n: usize) -> AmbientConfig {
    AmbientConfig {
        f: "1".into(),
        t_range: [Some(-100.0), Some(100.0)],
        fiber_curvature: 0.0,
        n,
    }
}

fn gd(s: f64) -> f64 {
    2.0 * (s / 2.0).tanh().atan()
}

fn check(
    name: &'static str,
    value: f64,
    ok: bool,
    reason: &'static str,
) -> Result<(), FixtureError> {
    if ok {
        Ok(())
    } else {
        Err(FixtureError::Param {
            name,
            value,
            reason,
        })
    }
}

struct Common {
    n: usize,
    alpha: f64,
    grid: GridConfig,
}

fn common(p: &FixtureParams, n: usize, alpha: f64) -> Result<Common, FixtureError> {
    let n = p.n.unwrap_or(n);
    let alpha = p.alpha.unwrap_or(alpha);
    check("n", n as f64, n >= 2, "dimension must be at least 2")?;
    check("alpha", alpha, alpha > 0.0, "alpha must be positive")?;
    let mut grid = GridConfig::default();
    if let Some(m) = p.points {
        grid.points = m;
    }
    Ok(Common { n, alpha, grid })
}

fn range(p: &FixtureParams, lo: f64, hi: f64) -> Result<[f64; 2], FixtureError> {
    let r = p.s_range.unwrap_or([lo, hi]);
    check("s_range", r[0], r[0] < r[1], "empty parameter range")?;
    Ok(r)
}

fn rotational(
    c: Common,
    theta: String,
    s_range: [f64; 2],
    zeta0: f64,
    beta0: f64,
    u: UConfig,
) -> Scenario {
    Scenario {
        ambient: flat(c.n),
        profile: Some(ProfileConfig {
            theta,
            s_range,
            zeta0,
            beta0,
        }),
        slice: None,
        structure: StructureConfig {
            alpha: c.alpha,
            u,
            mu: FieldConfig::solve(),
            lambda: FieldConfig::solve(),
            angles: None,
        },
        grid: c.grid,
        outputs: OutputsConfig::default(),
    }
}

pub fn make_fixture(name: &str, p: &FixtureParams) -> Result<Fixture, FixtureError> {
    let (scenario, expectations) = match name {
        "sphere_slice" => {
            let c = common(p, 3, 0.5)?;
            let t0 = p.t0.unwrap_or(1.0);
            check("t0", t0, t0 > 0.0, "slice height must be positive")?;
            let (n, alpha) = (c.n, c.alpha);
            let sc = Scenario {
                ambient: AmbientConfig {
                    f: "t".into(),
                    t_range: [Some(0.0), None],
                    fiber_curvature: 1.0,
                    n,
                },
                profile: None,
                slice: Some(SliceConfig { t0 }),
                structure: StructureConfig {
                    alpha,
                    u: UConfig::IsometricIdentity,
                    mu: FieldConfig::solve(),
                    lambda: FieldConfig::solve(),
                    angles: None,
                },
                grid: c.grid,
                outputs: OutputsConfig::default(),
            };
            let ex = PrintedForms {
                lambda: Some(format!("{} + 1 - {}", n, num(alpha))),
                h: Some(num(t0)),
                notes: vec!["u is the identity map of the fiber sphere".into()],
                ..Default::default()
            };
            (sc, ex)
        }
        "gudermannian" => {
            let c = common(p, 2, 1.0)?;
            let r = range(p, 0.25, 3.0)?;
            check("s_range", r[0], r[0] > 0.0, "the angle reaches 1 at s = 0")?;
            let n = c.n as f64;
            let alpha = c.alpha;
            let sc = rotational(
                c,
                "sqrt(1-tanh(s)^2)".into(),
                r,
                r[0].cosh().ln(),
                gd(r[0]),
                UConfig::BaseRadial {
                    expr: Some("sinh(s)".into()),
                    solve: None,
                },
            );
            let g = "(2*arctan(tanh(s/2)))";
            let ex = PrintedForms {
                mu: Some(format!(
                    "(({g}*csch(s) - 1)*({n} - 2 + {g}*csch(s)))/(4*arctan(tanh(s/2))^2) - {}*cosh(s)^2*coth(s)^2",
                    num(alpha)
                )),
                lambda: Some(format!(
                    "sech(s)*(4*arctan(tanh(s/2)) + ({n} - 2)*sinh(s))*tanh(s)/(4*arctan(tanh(s/2))^2)"
                )),
                u: Some("sinh(s)".into()),
                h: Some("log(cosh(s))".into()),
                notes: Vec::new(),
            };
            (sc, ex)
        }
        "constant_angle" => {
            let c = common(p, 3, 1.0)?;
            let r = range(p, 0.5, 5.0)?;
            let theta = p.theta0.unwrap_or(0.6);
            let c1 = p.c1.unwrap_or(1.0);
            check(
                "theta0",
                theta,
                theta.abs() < 1.0 && theta != 0.0,
                "need 0 < |theta0| < 1",
            )?;
            check(
                "c1",
                c1,
                theta * r[0] + c1 > 0.0 && theta * r[1] + c1 > 0.0,
                "sigma must stay positive",
            )?;
            let root = (1.0 - theta * theta).sqrt();
            let (n, alpha) = (c.n as f64, c.alpha);
            let zeta0 = root * r[0];
            let sc = rotational(
                c,
                format!("{theta}"),
                r,
                zeta0,
                theta * r[0] + c1,
                UConfig::BaseRadial {
                    expr: None,
                    solve: Some(SolveUConfig {
                        c2: c1,
                        c3: c1 * zeta0.exp() / root,
                        convention: TauConvention::PaperOde,
                    }),
                },
            );
            let (t, w, a, k) = (num(theta), num(root), num(alpha), num(c1));
            let sig = format!("({t}*s + {k})");
            let ex = PrintedForms {
                lambda: Some(format!(
                    "({sig}*{t}*{w} + ({n} - 2)*(1 - {t}^2))/{sig}^2"
                )),
                mu: Some(format!(
                    "-({n} - 2)/{sig}^2 - {t}*{w}/((1 - {t}^2)*{sig}) - {a}*{k}^2*exp(2*{w}*s)/(1 - {t}^2)"
                )),
                u: Some(format!("{k}*exp({w}*s)/{w}")),
                h: Some(format!("{w}*s")),
                notes: vec!["the printed lambda and mu use c4 for the sigma offset; c4 := c1 here".into()],
            };
            (sc, ex)
        }
        "fiber_map" => {
            let c = common(p, 3, 1.0)?;
            let r = range(p, 0.3, std::f64::consts::PI - 0.3)?;
            check(
                "s_range",
                r[0],
                r[0] > 0.0,
                "the profile needs s in (0, pi)",
            )?;
            check(
                "s_range",
                r[1],
                r[1] < std::f64::consts::PI,
                "the profile needs s in (0, pi)",
            )?;
            let k = p.k.unwrap_or(c.n - 1);
            check(
                "k",
                k as f64,
                (1..c.n).contains(&k),
                "fiber index must lie in 1..n-1",
            )?;
            let c1 = p.c1.unwrap_or(0.5);
            let (n, alpha) = (c.n as f64, c.alpha);
            let beta0 = r[0] / 2.0 + (2.0 * r[0]).sin() / 4.0;
            let sc = rotational(
                c,
                "cos(s)^2".into(),
                r,
                0.0,
                beta0,
                UConfig::FiberLinear { k, c4: c1, c5: 0.0 },
            );
            let (a, k1) = (num(alpha), num(c1));
            let head = format!(
                "(16*({n} - 2 - {a}*{k1}^2 - ({n} - 2)*cos(s)^4) + 8*(s + cos(s)*sin(s))*sin(2*s))/(2*s + sin(2*s))^2"
            );
            let ex = PrintedForms {
                lambda: Some(format!(
                    "{head} + 2*cos(s)^2*sqrt(1 - cos(s)^4)/(s + cos(s)*sin(s))"
                )),
                mu: Some(format!(
                    "-(1/(1 - cos(s)^4))*(2*cos(s)^2*sqrt(1 - cos(s)^4)/(s + cos(s)*sin(s)) - 2*cos(s)*sin(s)*(cos(s)^2/sqrt(1 - cos(s)^4) + 2*({n} - 1)/(s + cos(s)*sin(s))) + {head})"
                )),
                u: None,
                h: Some(
                    "-(sqrt(1 - cos(s)^4)*(sqrt(cos(2*s) + 3)*cos(s)/sin(s) + sqrt(2)/sin(s)*log(sqrt(2)*cos(s) + sqrt(cos(2*s) + 3))))/(2*sqrt(cos(2*s) + 3))".into(),
                ),
                notes: vec![format!("u = {c1}*v_{k}")],
            };
            (sc, ex)
        }
        "cylinder" => {
            let c = common(p, 3, 1.0)?;
            let r = range(p, 0.0, 4.0)?;
            let sc = rotational(
                c,
                "0".into(),
                r,
                r[0],
                1.0,
                UConfig::Constant { value: 0.0 },
            );
            (sc, PrintedForms::default())
        }
        "cone" => {
            let c = common(p, 3, 1.0)?;
            let r = range(p, 0.5, 5.0)?;
            let theta = p.theta0.unwrap_or(0.6);
            check(
                "theta0",
                theta,
                theta > 0.0 && theta < 1.0,
                "need 0 < theta0 < 1",
            )?;
            check("s_range", r[0], r[0] > 0.0, "the apex s = 0 is singular")?;
            let sc = rotational(
                c,
                format!("{theta}"),
                r,
                0.0,
                theta * r[0],
                UConfig::Constant { value: 0.0 },
            );
            (sc, PrintedForms::default())
        }
        other => return Err(FixtureError::Unknown(other.to_string())),
    };
    Ok(Fixture {
        name: name.to_string(),
        scenario,
        expectations,
    })
}

fn eval_opt(text: &Option<String>, s: f64) -> Result<Option<f64>, FixtureError> {
    let Some(t) = text else { return Ok(None) };
    let e = Expression::parse(t, "s").map_err(|err| ScenarioError::Config {
        key: "expectations".into(),
        message: err.to_string(),
    })?;
    e.eval(s).map(Some).map_err(|source| {
        StructureError::Field {
            field: "printed form",
            s,
            source,
        }
        .into()
    })
}

fn max_rel<'a>(pairs: impl Iterator<Item = (f64, Option<f64>)> + 'a) -> Option<f64> {
    let mut out: Option<f64> = None;
    for (a, b) in pairs {
        if let Some(b) = b {
            let d = (a - b).abs() / (1.0 + b.abs());
            out = Some(out.map_or(d, |m: f64| m.max(d)));
        }
    }
    out
}

impl Fixture {
    pub fn build(&self) -> Result<EinsteinTypeStructure, FixtureError> {
        Ok(self.scenario.build()?)
    }

    /// Evaluate the printed forms next to the solver on the grid of `st`.
    pub fn compare(
        &self,
        st: &EinsteinTypeStructure,
    ) -> Result<ExpectationComparison, FixtureError> {
        let ex = &self.expectations;
        let mut rows = Vec::new();
        for s in st.grid() {
            let e = st.evaluate(s)?;
            let solved = st.solve_lambda_mu(s)?;
            let u = match st.u() {
                UMap::BaseRadial(_) | UMap::Constant(_) => Some(e.u.radial.value),
                _ => None,
            };
            rows.push(ExpectationRow {
                s,
                solver_lambda: solved.lambda,
                solver_mu: solved.mu,
                printed_lambda: eval_opt(&ex.lambda, s)?,
                printed_mu: if solved.mu_determined {
                    eval_opt(&ex.mu, s)?
                } else {
                    None
                },
                u,
                printed_u: eval_opt(&ex.u, s)?,
                h: e.geometry.height.value,
                printed_h: eval_opt(&ex.h, s)?,
            });
        }
        let lambda_max = max_rel(rows.iter().map(|r| (r.solver_lambda, r.printed_lambda)));
        let mu_max = max_rel(rows.iter().map(|r| (r.solver_mu, r.printed_mu)));
        let u_max = max_rel(rows.iter().filter_map(|r| r.u.map(|u| (u, r.printed_u))));
        let diffs: Vec<f64> = rows
            .iter()
            .filter_map(|r| r.printed_h.map(|p| r.h - p))
            .collect();
        let (h_offset, h_max) = if diffs.is_empty() {
            (None, None)
        } else {
            let c = diffs.iter().sum::<f64>() / diffs.len() as f64;
            let dev = diffs.iter().fold(0.0f64, |m, d| m.max((d - c).abs()));
            (Some(c), Some(dev))
        };
        Ok(ExpectationComparison {
            rows,
            lambda_max,
            mu_max,
            u_max,
            h_offset,
            h_max,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::einstein::Convention;
    use crate::rotational::Hypersurface;

    fn build(name: &str) -> (Fixture, EinsteinTypeStructure) {
        let fx = make_fixture(name, &FixtureParams::default()).unwrap();
        let st = fx.build().unwrap();
        (fx, st)
    }

    #[test]
    fn every_fixture_builds_and_lists() {
        assert_eq!(list().len(), FIXTURE_NAMES.len());
        for name in FIXTURE_NAMES {
            let (_, st) = build(name);
            if let Hypersurface::Rotational(r) = st.surface() {
                assert!(r.arc_length_defect().unwrap() < 1e-10, "{name}");
            }
        }
        assert!(matches!(
            make_fixture("torus", &FixtureParams::default()),
            Err(FixtureError::Unknown(_))
        ));
    }

    #[test]
    fn gudermannian_values_at_one() {
        let (fx, st) = build("gudermannian");
        let e = st.evaluate(1.0).unwrap();
        assert!((e.geometry.height.value - 1f64.cosh().ln()).abs() < 1e-6);
        assert!((e.u.radial.value - 1f64.sinh()).abs() < 1e-12);
        assert!((e.geometry.theta.value - 1.0 / 1f64.cosh()).abs() < 1e-12);
        assert!(e.u.tau_residual(Convention::B) < 1e-8);
        let cmp = fx.compare(&st).unwrap();
        assert!(cmp.lambda_max.unwrap() < 1e-8);
        assert!(cmp.mu_max.unwrap() < 1e-7);
        assert!(cmp.h_offset.unwrap().abs() < 1e-9);
    }

    #[test]
    fn constant_angle_matches_printed_forms() {
        let (fx, st) = build("constant_angle");
        let cmp = fx.compare(&st).unwrap();
        assert!(cmp.lambda_max.unwrap() < 1e-8);
        assert!(cmp.mu_max.unwrap() < 1e-8);
        assert!(cmp.u_max.unwrap() < 1e-10);
        assert!(cmp.h_offset.unwrap().abs() < 1e-9 && cmp.h_max.unwrap() < 1e-9);
        let g = st.surface().geometry(2.0).unwrap();
        assert!((g.sigma.value - 2.2).abs() < 1e-9);
    }

    #[test]
    fn fiber_map_height_differs_by_a_constant() {
        let (fx, st) = build("fiber_map");
        let cmp = fx.compare(&st).unwrap();
        assert!(cmp.h_max.unwrap() < 1e-7, "{cmp:?}");
        for e in st.evaluate_grid().unwrap() {
            assert!(e.u.tau_residual(Convention::A) < 1e-5);
        }
    }

    #[test]
    fn cylinder_and_slice_values() {
        let (_, st) = build("cylinder");
        let o = st.solve_lambda_mu(1.0).unwrap();
        assert!((o.lambda - 1.0).abs() < 1e-12 && (o.mu + 1.0).abs() < 1e-12);
        let (fx, st) = build("sphere_slice");
        let cmp = fx.compare(&st).unwrap();
        assert_eq!(cmp.rows.len(), 1);
        assert!((cmp.rows[0].solver_lambda - 1.5).abs() < 1e-14);
        assert_eq!(cmp.rows[0].printed_lambda, Some(3.5));
    }

    #[test]
    fn parameter_domain_is_checked() {
        let bad = FixtureParams {
            s_range: Some([0.3, 3.5]),
            ..Default::default()
        };
        assert!(matches!(
            make_fixture("fiber_map", &bad),
            Err(FixtureError::Param { .. })
        ));
        let bad = FixtureParams {
            alpha: Some(0.0),
            ..Default::default()
        };
        assert!(matches!(
            make_fixture("cone", &bad),
            Err(FixtureError::Param { name: "alpha", .. })
        ));
    }
}

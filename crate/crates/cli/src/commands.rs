use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use etl_core::einstein::classification::compare_printed;
use etl_core::fixtures::{self, FixtureParams};
use etl_core::oracle::{ambient_oracle, oracle_points, oracle_report};
use etl_core::{
    EinsteinTypeStructure, Expression, Hypersurface, OracleRecord, ResidualReport, ScalarField,
    Scenario,
};

use crate::output::{csv, float, json, Cell, Sink, Summary};
use crate::{Cli, CliError, ConventionArg, EXIT_OK, EXIT_VERIFY};

/// Default relative tolerance of the finite-difference comparison.
const ORACLE_TOLERANCE: f64 = 1e-5;
/// Fiber coordinate used for the ambient curvature check.
const AMBIENT_FIBER_POINT: f64 = 0.7;

fn load(cli: &Cli) -> Result<Scenario, CliError> {
    let path = cli
        .config
        .as_ref()
        .ok_or_else(|| CliError::config("--config", "a scenario file is required"))?;
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io("--config", e))?;
    let mut sc = Scenario::from_json(&text)?;
    if let Some(m) = cli.grid {
        sc.grid.points = m;
    }
    Ok(sc)
}

fn verify_tolerance(cli: &Cli, sc: &Scenario) -> f64 {
    cli.tol.unwrap_or(sc.grid.verify_tolerance)
}

// ---------------------------------------------------------------- builders

fn solve_csv(st: &EinsteinTypeStructure) -> Result<String, CliError> {
    let rows: Vec<Vec<Cell>> = st
        .grid()
        .par_iter()
        .map(|&s| -> Result<Vec<Cell>, CliError> {
            let e = st.evaluate(s)?;
            let o = st.solve_lambda_mu(s)?;
            let g = &e.geometry;
            Ok(vec![
                s.into(),
                o.lambda.into(),
                Cell::Opt(o.mu_determined.then_some(o.mu)),
                e.u.radial.value.into(),
                e.u.radial.d1.into(),
                g.height.value.into(),
                g.theta.value.into(),
                g.sigma.value.into(),
            ])
        })
        .collect::<Result<_, _>>()?;
    Ok(csv(
        &["s", "lambda", "mu", "u", "u_s", "h", "theta", "sigma"],
        &rows,
    ))
}

fn profile_csv(st: &EinsteinTypeStructure) -> Result<Option<String>, CliError> {
    let Some(r) = st.surface().as_rotational() else {
        return Ok(None);
    };
    let rows: Vec<Vec<Cell>> = r
        .profile_rows()?
        .into_iter()
        .map(|row| row.iter().map(|&x| Cell::Num(x)).collect())
        .collect();
    Ok(Some(csv(
        &["s", "zeta", "beta", "sigma", "theta", "h"],
        &rows,
    )))
}

fn verify_report(
    st: &EinsteinTypeStructure,
    tol: f64,
    convention: Option<ConventionArg>,
) -> Result<ResidualReport, CliError> {
    let gate = ConventionArg::gated(convention);
    let mut report = st.residual_eq0001(tol, &gate)?;
    let extrinsic = st.residual_prop1(tol, &gate)?;
    if let Some(eq) = extrinsic.equation("structure_extrinsic", None) {
        report.equations.insert(1, eq.clone());
    }
    report.pass = report.equations.iter().filter(|e| e.gated).all(|e| e.pass);
    Ok(report)
}

#[derive(Serialize)]
struct OracleOutput {
    tolerance: f64,
    fd_step: f64,
    pass: bool,
    /// Largest `|closed - oracle| / (1 + |closed|)`.
    max_rel_err: f64,
    records: Vec<OracleRecord>,
}

fn oracle_output(
    st: &EinsteinTypeStructure,
    sc: &Scenario,
    tol: f64,
) -> Result<OracleOutput, CliError> {
    let surface = st.surface();
    let step = sc.outputs.fd_step;
    let points = oracle_points(surface, sc.outputs.oracle_points);
    let mut records = oracle_report(surface, &points, step)?;
    let heights: Vec<f64> = match surface {
        Hypersurface::Slice(sl) => vec![sl.height()],
        Hypersurface::Rotational(_) => points
            .iter()
            .map(|&s| surface.geometry(s).map(|g| g.height.value))
            .collect::<Result<_, _>>()?,
    };
    for t in heights {
        records.extend(ambient_oracle(
            surface.ambient(),
            t,
            AMBIENT_FIBER_POINT,
            step,
        )?);
    }
    let max_rel_err = records
        .iter()
        .map(|r| r.abs_err / (1.0 + r.closed_form.abs()))
        .fold(0.0, f64::max);
    Ok(OracleOutput {
        tolerance: tol,
        fd_step: step,
        pass: records.iter().all(|r| r.within(tol)),
        max_rel_err,
        records,
    })
}

fn mesh_csv(st: &EinsteinTypeStructure, sc: &Scenario) -> Result<String, CliError> {
    let r = st
        .surface()
        .as_rotational()
        .ok_or_else(|| CliError::config("profile", "mesh needs a rotational profile"))?;
    let (ns, nv) = (sc.outputs.mesh_s_points, sc.outputs.mesh_v_points);
    if ns < 2 {
        return Err(CliError::config(
            "outputs.mesh_s_points",
            "need at least 2 points",
        ));
    }
    if nv < 2 {
        return Err(CliError::config(
            "outputs.mesh_v_points",
            "need at least 2 points",
        ));
    }
    let n = r.n();
    let (lo, hi) = r.profile().range();
    let axes: Vec<Vec<f64>> = (0..n - 1)
        .map(|i| {
            (0..nv)
                .map(|j| {
                    if i == n - 2 {
                        2.0 * PI * j as f64 / nv as f64
                    } else {
                        PI * j as f64 / (nv - 1) as f64
                    }
                })
                .collect()
        })
        .collect();
    let mut fibers: Vec<Vec<f64>> = vec![Vec::new()];
    for axis in &axes {
        fibers = fibers
            .into_iter()
            .flat_map(|prefix| {
                axis.iter().map(move |&v| {
                    let mut p = prefix.clone();
                    p.push(v);
                    p
                })
            })
            .collect();
    }
    let blocks: Vec<Vec<Vec<Cell>>> = (0..ns)
        .into_par_iter()
        .map(|i| -> Result<Vec<Vec<Cell>>, CliError> {
            let s = if i + 1 == ns {
                hi
            } else {
                lo + (hi - lo) * i as f64 / (ns - 1) as f64
            };
            fibers
                .iter()
                .map(|v| {
                    let x = r.embed_point(s, v)?;
                    let mut row = vec![Cell::Num(s)];
                    row.extend(v.iter().map(|&a| Cell::Num(a)));
                    row.extend(x.into_iter().map(Cell::Num));
                    Ok(row)
                })
                .collect()
        })
        .collect::<Result<_, _>>()?;
    let mut header: Vec<String> = vec!["s".into()];
    header.extend((1..n).map(|i| format!("v{i}")));
    header.extend((0..=n).map(|i| format!("x{i}")));
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    let rows: Vec<Vec<Cell>> = blocks.into_iter().flatten().collect();
    Ok(csv(&header, &rows))
}

fn margins_csv(st: &EinsteinTypeStructure) -> Result<String, CliError> {
    let rows: Vec<Vec<Cell>> = st
        .hypothesis_margins()?
        .into_iter()
        .map(|m| {
            vec![
                m.s.into(),
                m.mean_curvature.into(),
                m.mean_curvature_upper.into(),
                m.constant_map.into(),
                m.discriminant.into(),
                m.rho.into(),
                m.rho_margin.into(),
                m.mu_plus_log1.into(),
                m.fiber_curvature.into(),
                m.traceless_norm2.into(),
            ]
        })
        .collect();
    Ok(csv(
        &[
            "s",
            "mean_curvature",
            "mean_curvature_upper",
            "constant_map",
            "discriminant",
            "rho",
            "rho_margin",
            "mu_plus_log1",
            "fiber_curvature",
            "traceless_norm2",
        ],
        &rows,
    ))
}

fn bochner_csv(st: &EinsteinTypeStructure, tol: f64) -> Result<(String, usize, f64), CliError> {
    let report = st.bochner_report(tol)?;
    let applicable = report.iter().filter(|b| b.applicable).count();
    let gap = report
        .iter()
        .filter(|b| b.applicable)
        .map(|b| (b.lhs - b.rhs).abs())
        .fold(0.0, f64::max);
    let rows: Vec<Vec<Cell>> = report
        .iter()
        .map(|b| vec![b.s.into(), b.lhs.into(), b.rhs.into(), b.applicable.into()])
        .collect();
    Ok((
        csv(&["s", "lhs", "rhs", "applicable"], &rows),
        applicable,
        gap,
    ))
}

// ---------------------------------------------------------------- commands

pub fn solve(cli: &Cli) -> Result<i32, CliError> {
    let sc = load(cli)?;
    let st = sc.build()?;
    let mut sink = Sink::new(cli.out.as_deref())?;
    sink.emit("solve.csv", &solve_csv(&st)?)?;
    if let Some(p) = profile_csv(&st)? {
        sink.file("profile.csv", &p)?;
    }
    Ok(EXIT_OK)
}

pub fn verify(cli: &Cli) -> Result<i32, CliError> {
    let sc = load(cli)?;
    let st = sc.build()?;
    let report = verify_report(&st, verify_tolerance(cli, &sc), cli.convention)?;
    let mut sink = Sink::new(cli.out.as_deref())?;
    sink.emit("verify.json", &json(&report)?)?;
    Ok(if report.pass { EXIT_OK } else { EXIT_VERIFY })
}

pub fn oracle(cli: &Cli) -> Result<i32, CliError> {
    let sc = load(cli)?;
    let st = sc.build()?;
    let out = oracle_output(&st, &sc, cli.tol.unwrap_or(ORACLE_TOLERANCE))?;
    let mut sink = Sink::new(cli.out.as_deref())?;
    sink.emit("oracle.json", &json(&out)?)?;
    Ok(if out.pass { EXIT_OK } else { EXIT_VERIFY })
}

pub fn mesh(cli: &Cli) -> Result<i32, CliError> {
    let sc = load(cli)?;
    let st = sc.build()?;
    let mut sink = Sink::new(cli.out.as_deref())?;
    sink.emit("mesh.csv", &mesh_csv(&st, &sc)?)?;
    Ok(EXIT_OK)
}

pub fn margins(cli: &Cli) -> Result<i32, CliError> {
    let sc = load(cli)?;
    let st = sc.build()?;
    let mut sink = Sink::new(cli.out.as_deref())?;
    sink.emit("margins.csv", &margins_csv(&st)?)?;
    Ok(EXIT_OK)
}

fn opt(x: Option<f64>) -> String {
    x.map_or_else(|| "n/a".to_string(), float)
}

pub fn example(cli: &Cli, name: Option<&str>, list: bool) -> Result<i32, CliError> {
    if list {
        let mut text = String::new();
        for f in fixtures::list() {
            text.push_str(&format!(
                "{:<16} {}  [{}]\n",
                f.name, f.description, f.defaults
            ));
        }
        Sink::new(None)?.emit("list", &text)?;
        return Ok(EXIT_OK);
    }
    let name =
        name.ok_or_else(|| CliError::config("example", "a fixture name or --list is required"))?;
    let params = FixtureParams {
        points: cli.grid,
        ..Default::default()
    };
    let fx = fixtures::make_fixture(name, &params)?;
    let sc = &fx.scenario;
    let st = fx.build()?;
    let tol = verify_tolerance(cli, sc);
    let mut sink = Sink::new(cli.out.as_deref())?;
    let mut summary = Summary::default();
    summary.line("fixture", name);
    summary.line("n", st.n());
    summary.line("grid_points", st.grid().len());

    sink.file("config.json", &format!("{}\n", sc.to_json()))?;

    if let Some(r) = st.surface().as_rotational() {
        summary.line("arc_length_defect", float(r.arc_length_defect()?));
    }

    let report = verify_report(&st, tol, cli.convention)?;
    sink.file("verify.json", &json(&report)?)?;
    summary.line("verify_tolerance", float(tol));
    for eq in &report.equations {
        let label = match &eq.convention {
            Some(c) => format!("{}[{c}]", eq.equation),
            None => eq.equation.clone(),
        };
        let gate = if eq.gated { "gated" } else { "reported" };
        summary.line(&format!("max {label} ({gate})"), float(eq.max));
    }
    summary.line("verify", if report.pass { "PASS" } else { "FAIL" });

    let ex = &fx.expectations;
    if let Some(lambda) = &ex.lambda {
        let parse =
            |t: &str| Expression::parse(t, "s").map_err(|e| CliError::config("expectations", e));
        let mu = match &ex.mu {
            Some(m) => ScalarField::Expr(parse(m)?),
            None => ScalarField::Solve,
        };
        let printed = st.with_fields(mu, ScalarField::Expr(parse(lambda)?));
        let pr = printed.residual_eq0001(tol, &[])?;
        sink.file("printed_verify.json", &json(&pr)?)?;
        if let Some(eq) = pr.equation("structure", None) {
            summary.line("max structure with printed fields", float(eq.max));
        }
    }

    let cmp = fx.compare(&st)?;
    sink.file("expectations.json", &json(&cmp)?)?;
    summary.line("printed lambda vs solver (rel)", opt(cmp.lambda_max));
    summary.line("printed mu vs solver (rel)", opt(cmp.mu_max));
    summary.line("printed u vs computed (rel)", opt(cmp.u_max));
    summary.line("printed h offset", opt(cmp.h_offset));
    summary.line("printed h deviation after offset", opt(cmp.h_max));

    let classification = compare_printed(&st)?;
    if !classification.is_empty() {
        let rows: Vec<Vec<Cell>> = classification
            .iter()
            .map(|c| {
                vec![
                    c.s.into(),
                    c.solver_lambda.into(),
                    c.solver_mu.into(),
                    c.printed_lambda.into(),
                    c.printed_mu.into(),
                    c.system_radial.into(),
                    c.system_fiber.into(),
                ]
            })
            .collect();
        sink.file(
            "classification.csv",
            &csv(
                &[
                    "s",
                    "solver_lambda",
                    "solver_mu",
                    "printed_lambda",
                    "printed_mu",
                    "system_radial",
                    "system_fiber",
                ],
                &rows,
            ),
        )?;
        let worst = |f: &dyn Fn(&etl_core::einstein::classification::PrintedComparison) -> f64| {
            classification.iter().map(f).fold(0.0, f64::max)
        };
        summary.line(
            "classification lambda gap",
            float(worst(&|c| (c.printed_lambda - c.solver_lambda).abs())),
        );
        summary.line(
            "classification mu gap",
            float(worst(&|c| (c.printed_mu - c.solver_mu).abs())),
        );
    }

    let orc = oracle_output(&st, sc, ORACLE_TOLERANCE)?;
    sink.file("oracle.json", &json(&orc)?)?;
    summary.line("oracle max rel err", float(orc.max_rel_err));

    let (bochner, applicable, gap) = bochner_csv(&st, tol)?;
    sink.file("bochner.csv", &bochner)?;
    summary.line("bochner applicable points", applicable);
    summary.line("bochner max gap (applicable)", float(gap));

    sink.file("margins.csv", &margins_csv(&st)?)?;
    sink.file("solve.csv", &solve_csv(&st)?)?;
    if let Some(p) = profile_csv(&st)? {
        sink.file("profile.csv", &p)?;
        if st.n() == 2 {
            sink.file("mesh.csv", &mesh_csv(&st, sc)?)?;
        }
    }

    Sink::new(None)?.emit("summary", &summary.into_string())?;
    Ok(if report.pass { EXIT_OK } else { EXIT_VERIFY })
}

use super::classification::{compare_printed, printed_radial};
use super::*;
use crate::rotational::{build_surface, SliceSurface};

fn expr(text: &str) -> Expression {
    Expression::parse(text, "s").unwrap()
}

fn rotational(
    theta: &str,
    lo: f64,
    hi: f64,
    zeta0: f64,
    beta0: f64,
    n: usize,
) -> RotationalSurface {
    let profile = AngleProfile::new(expr(theta), lo, hi).unwrap();
    build_surface(Ambient::euclidean_product(n), profile, zeta0, beta0, 101).unwrap()
}

fn gd(s: f64) -> f64 {
    2.0 * (s / 2.0).tanh().atan()
}

fn solved(surface: RotationalSurface, alpha: f64, u: UMap) -> EinsteinTypeStructure {
    EinsteinTypeStructure::new(
        surface.into(),
        alpha,
        u,
        ScalarField::Solve,
        ScalarField::Solve,
    )
    .unwrap()
}

#[test]
fn cylinder_solution_by_hand() {
    for n in 2..6 {
        let st = solved(
            rotational("0", 0.0, 4.0, 0.0, 1.0, n),
            0.7,
            UMap::Constant(3.0),
        );
        for s in st.grid() {
            let o = st.solve_lambda_mu(s).unwrap();
            let k = n as f64 - 2.0;
            assert!((o.lambda - k).abs() < 1e-14);
            assert!((o.mu + k).abs() < 1e-14);
        }
        let report = st.residual_eq0001(1e-8, &Convention::BOTH).unwrap();
        assert!(report.pass, "{report:?}");
    }
}

#[test]
fn mismatched_lambda_is_reported() {
    let st = EinsteinTypeStructure::new(
        rotational("0", 0.0, 4.0, 0.0, 1.0, 3).into(),
        1.0,
        UMap::Constant(0.0),
        ScalarField::Constant(-1.0),
        ScalarField::Constant(0.0),
    )
    .unwrap();
    let report = st.residual_eq0001(1e-6, &[]).unwrap();
    assert!(!report.pass);
    let tensor = report.equation("structure", None).unwrap();
    assert!((tensor.max - 1.0).abs() < 1e-12);
}

#[test]
fn hessian_identity_on_gudermannian() {
    let r = rotational("sech(s)", 0.25, 3.0, 0.25f64.cosh().ln(), gd(0.25), 2);
    for &s in r.grid() {
        let g = r.geometry(s).unwrap();
        let ext = hessian_height_extrinsic(&g);
        assert!((ext - g.hess_h).max_abs(2) < 1e-12, "s = {s}");
    }
    let g = r.geometry(1.0).unwrap();
    let sech2 = (1.0 / 1f64.cosh()).powi(2);
    assert!((g.hess_h.ss - sech2).abs() < 1e-8);
}

#[test]
fn gudermannian_printed_fields_match_solver() {
    let r = rotational(
        "sqrt(1-tanh(s)^2)",
        0.25,
        3.0,
        0.25f64.cosh().ln(),
        gd(0.25),
        2,
    );
    let alpha = 1.0;
    let st = solved(r, alpha, UMap::BaseRadial(RadialU::Expr(expr("sinh(s)"))));
    let g = "(2*arctan(tanh(s/2)))";
    let mu = format!("(({g}*csch(s) - 1)*(2 - 2 + {g}*csch(s)))/(4*arctan(tanh(s/2))^2) - {alpha}*cosh(s)^2*coth(s)^2");
    let lambda = "sech(s)*(4*arctan(tanh(s/2)) + (2 - 2)*sinh(s))*tanh(s)/(4*arctan(tanh(s/2))^2)"
        .to_string();
    for s in st.grid() {
        let o = st.solve_lambda_mu(s).unwrap();
        assert!(
            (o.lambda - expr(&lambda).eval(s).unwrap()).abs() < 1e-8,
            "λ at {s}"
        );
        assert!(
            (o.mu - expr(&mu).eval(s).unwrap()).abs() < 1e-7 * (1.0 + o.mu.abs()),
            "μ at {s}"
        );
    }
    let e = st.evaluate(1.0).unwrap();
    assert!(e.u.tau_residual(Convention::B) < 1e-12);
    let sigma = gd(1.0);
    let gap = (1.0 / 1f64.cosh()) / sigma * 1f64.cosh();
    assert!((e.u.tau_residual(Convention::A) - gap).abs() < 1e-8);
}

#[test]
fn constant_angle_printed_forms() {
    let (theta, c1, n, alpha) = (0.6, 1.0, 3usize, 1.0);
    let r = rotational("0.6", 0.5, 5.0, 0.4, 0.6 * 0.5 + c1, n);
    let u = solve_u_base(&r, c1, (0.4f64).exp() / 0.8, TauConvention::PaperOde).unwrap();
    let st = solved(r, alpha, u);
    let root = (1.0f64 - theta * theta).sqrt();
    for s in st.grid() {
        let o = st.solve_lambda_mu(s).unwrap();
        let sig = theta * s + c1;
        let lam = (sig * theta * root + (n as f64 - 2.0) * (1.0 - theta * theta)) / (sig * sig);
        let mu = -(n as f64 - 2.0) / (sig * sig)
            - theta * root / ((1.0 - theta * theta) * sig)
            - alpha * c1 * c1 * (2.0 * root * s).exp() / (1.0 - theta * theta);
        assert!((o.lambda - lam).abs() < 1e-8);
        assert!((o.mu - mu).abs() < 1e-8 * (1.0 + mu.abs()));
        let e = st.evaluate(s).unwrap();
        let printed_u = c1 * (root * s).exp() / root;
        assert!((e.u.radial.value - printed_u).abs() < 1e-10 * (1.0 + printed_u.abs()));
    }
}

#[test]
fn forms_agree_and_trace_identity_holds() {
    let r = rotational("0.4*cos(s)", 0.1, 3.0, 0.0, 1.0, 3);
    let st = solved(r, 0.8, UMap::BaseRadial(RadialU::Expr(expr("s^2"))));
    for e in st.evaluate_grid().unwrap() {
        let a = e.residual_eq0001();
        let b = e.residual_prop1();
        assert!((a - b).max_abs(3) < 1e-10);
        assert!(a.ss.abs() < 1e-10 && a.vv_perp.abs() < 1e-10);
        let (intr, trace, extr) = e.u_scalar_curvature(0.8);
        assert!((intr - trace).abs() < 1e-8);
        assert!((intr - extr).abs() < 1e-9);
    }
}

#[test]
fn fiber_linear_leaves_vv_k_mismatch() {
    let r = rotational("cos(s)^2", 0.3, 2.8, 0.0, 0.15 + 0.6f64.sin() / 4.0, 3);
    let st = solved(
        r,
        1.0,
        UMap::FiberLinear {
            k: 2,
            c4: 0.5,
            c5: 0.0,
        },
    );
    let report = st.residual_eq0001(1e-8, &Convention::BOTH).unwrap();
    assert!(
        report.pass,
        "{:?}",
        report
            .equations
            .iter()
            .map(|e| (&e.equation, e.max))
            .collect::<Vec<_>>()
    );
    let consistency = report.equation("fiber_consistency", None).unwrap();
    assert!(!consistency.gated);
    assert!(consistency.max > 1e-3);
    let e = st.evaluate(1.0).unwrap();
    let sigma = e.geometry.sigma.value;
    let expected = 0.25 / (sigma * sigma * (std::f64::consts::PI / 3.0).sin().powi(2));
    assert!((e.solved.unwrap().vv_k_mismatch.unwrap() + expected).abs() < 1e-12);
}

#[test]
fn sphere_slice() {
    let ambient = Ambient::new(
        Expression::parse("t", "t").unwrap(),
        0.0,
        f64::INFINITY,
        1.0,
        3,
    )
    .unwrap();
    let slice = SliceSurface::new(ambient, 1.0).unwrap();
    let st = EinsteinTypeStructure::new(
        slice.into(),
        0.5,
        UMap::IsometricIdentity,
        ScalarField::Solve,
        ScalarField::Solve,
    )
    .unwrap();
    let o = st.solve_lambda_mu(0.0).unwrap();
    assert!((o.lambda - 1.5).abs() < 1e-14);
    assert!(!o.mu_determined);
    let e = st.evaluate(0.0).unwrap();
    let (a, b, c) = e.u_scalar_curvature(0.5);
    assert!((a - (6.0 - 1.5)).abs() < 1e-14);
    assert!((a - b).abs() < 1e-14 && (a - c).abs() < 1e-14);
    let bo = st.bochner_report(1e-7).unwrap();
    assert_eq!((bo[0].lhs, bo[0].rhs), (0.0, 0.0));
    let m = st.hypothesis_margins().unwrap();
    assert!(m[0].mean_curvature_upper.abs() < 1e-15);
}

#[test]
fn bochner_on_cylinder() {
    let st = solved(
        rotational("0", 0.0, 4.0, 0.0, 1.0, 3),
        1.0,
        UMap::Constant(0.0),
    );
    for b in st.bochner_report(1e-7).unwrap() {
        assert!(b.applicable);
        assert!((b.lhs - b.rhs).abs() < 1e-12);
    }
    let r = rotational("sech(s)", 0.25, 3.0, 0.25f64.cosh().ln(), gd(0.25), 2);
    let st = solved(r, 1.0, UMap::BaseRadial(RadialU::Expr(expr("sinh(s)"))));
    assert!(st
        .bochner_report(1e-7)
        .unwrap()
        .iter()
        .all(|b| !b.applicable));
}

#[test]
fn printed_classification_on_constant_angle() {
    let r = rotational("0.6", 0.5, 5.0, 0.4, 1.3, 3);
    let st = solved(r, 1.0, UMap::Constant(0.0));
    for c in compare_printed(&st).unwrap() {
        assert!(c.system_radial.abs() < 1e-10 && c.system_fiber.abs() < 1e-10);
        assert!((c.printed_lambda - c.solver_lambda).abs() < 1e-10);
    }
    let g = st.surface().geometry(1.0).unwrap();
    let (lam, _) = printed_radial(&g, 1.0, 0.0);
    assert!(lam.is_finite());
}

#[test]
fn constructor_rejects_bad_data() {
    let r = rotational("0", 0.0, 1.0, 0.0, 1.0, 3);
    let hs: Hypersurface = r.into();
    assert!(matches!(
        EinsteinTypeStructure::new(
            hs.clone(),
            0.0,
            UMap::Constant(0.0),
            ScalarField::Solve,
            ScalarField::Solve
        ),
        Err(StructureError::Alpha(_))
    ));
    assert!(matches!(
        EinsteinTypeStructure::new(
            hs.clone(),
            1.0,
            UMap::FiberLinear {
                k: 3,
                c4: 1.0,
                c5: 0.0
            },
            ScalarField::Solve,
            ScalarField::Solve
        ),
        Err(StructureError::FiberIndex { k: 3, max: 2 })
    ));
    assert!(matches!(
        EinsteinTypeStructure::new(
            hs,
            1.0,
            UMap::IsometricIdentity,
            ScalarField::Solve,
            ScalarField::Solve
        ),
        Err(StructureError::Mode { .. })
    ));
}

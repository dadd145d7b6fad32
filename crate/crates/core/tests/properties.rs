use approx::relative_eq;
use proptest::prelude::*;
use rayon::prelude::*;

use etl_core::einstein::hessian_height_extrinsic;
use etl_core::oracle::{ambient_oracle, DEFAULT_STEP};
use etl_core::{
    Ambient, AngleProfile, EinsteinTypeStructure, Expression, RadialU, RotationalSurface,
    ScalarField, UMap,
};

// ------------------------------------------------------------ expressions

fn leaf() -> impl Strategy<Value = String> {
    prop_oneof![
        Just("x".to_string()),
        (0.1f64..2.0).prop_map(|v| format!("{v:.3}")),
        Just("pi".to_string()),
    ]
}

fn smooth_expr() -> impl Strategy<Value = String> {
    leaf().prop_recursive(3, 16, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a} + {b})")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a} - {b})")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a})*({b})")),
            inner.clone().prop_map(|a| format!("({a})^2")),
            inner.clone().prop_map(|a| format!("-({a})")),
            (
                prop::sample::select(vec!["sin", "cos", "tanh", "arctan", "exp", "sech"]),
                inner
            )
                .prop_map(|(f, a)| format!("{f}({a})")),
        ]
    })
}

fn fd_derivatives(e: &Expression, x: f64, h: f64) -> (f64, f64) {
    let f = |t: f64| e.eval(t).unwrap();
    let (p1, m1, p2, m2, c) = (f(x + h), f(x - h), f(x + 2.0 * h), f(x - 2.0 * h), f(x));
    let d1 = (-p2 + 8.0 * p1 - 8.0 * m1 + m2) / (12.0 * h);
    let d2 = (-p2 + 16.0 * p1 - 30.0 * c + 16.0 * m1 - m2) / (12.0 * h * h);
    (d1, d2)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn jets_match_finite_differences(text in smooth_expr(), x in -1.5f64..1.5) {
        let e = Expression::parse(&text, "x").unwrap();
        let jet = e.eval_jet2(x);
        prop_assume!(jet.is_ok());
        let jet = jet.unwrap();
        prop_assume!(jet.value.abs() < 1e4 && jet.d1.abs() < 1e4 && jet.d2.abs() < 1e4);
        let (d1, d2) = fd_derivatives(&e, x, 1e-3);
        let scale = 1.0 + jet.value.abs() + jet.d1.abs() + jet.d2.abs();
        prop_assert!((jet.d1 - d1).abs() < 1e-6 * scale, "{text}: d1 {} vs {d1}", jet.d1);
        prop_assert!((jet.d2 - d2).abs() < 1e-4 * scale, "{text}: d2 {} vs {d2}", jet.d2);
        prop_assert_eq!(jet.value, e.eval(x).unwrap());
    }
}

proptest! {
    #[test]
    fn display_round_trips(text in smooth_expr(), x in -1.5f64..1.5) {
        let e = Expression::parse(&text, "x").unwrap();
        let again = Expression::parse(&e.to_string(), "x").unwrap();
        prop_assert_eq!(&again, &e);
        match (e.eval(x), again.eval(x)) {
            (Ok(a), Ok(b)) => prop_assert!(relative_eq!(a, b, max_relative = 1e-15)),
            (a, b) => prop_assert_eq!(a.is_err(), b.is_err()),
        }
    }
}

#[test]
fn concurrent_evaluation_is_identical() {
    let e = Expression::parse("2*arctan(tanh(s/2))*cosh(s)^2 - sech(s)*log(1 + s^2)", "s").unwrap();
    let xs: Vec<f64> = (0..20_000)
        .map(|i| -3.0 + 6.0 * i as f64 / 19_999.0)
        .collect();
    let serial: Vec<_> = xs.iter().map(|&x| e.eval_jet2(x).unwrap()).collect();
    let parallel: Vec<_> = xs.par_iter().map(|&x| e.eval_jet2(x).unwrap()).collect();
    assert_eq!(serial, parallel);
}

// ---------------------------------------------------------------- ambient

fn warping() -> impl Strategy<Value = (String, f64, f64)> {
    prop_oneof![
        Just(("cosh(t)".to_string(), -3.0, 3.0)),
        (-0.8f64..0.8).prop_map(|k| (format!("exp({k:.3}*t)"), -3.0, 3.0)),
        (0.1f64..1.0).prop_map(|a| (format!("1 + {a:.3}*t^2"), -3.0, 3.0)),
        Just(("t".to_string(), 0.5, 3.0)),
        Just(("sinh(t)".to_string(), 0.5, 3.0)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn ambient_curvatures_match_oracle(
        (f, lo, hi) in warping(),
        frac in 0.1f64..0.9,
        c in prop::sample::select(vec![-1.0, 0.0, 1.0]),
        x1 in 0.3f64..1.2,
    ) {
        let ambient = Ambient::new(Expression::parse(&f, "t").unwrap(), f64::NEG_INFINITY, f64::INFINITY, c, 2).unwrap();
        let t = lo + (hi - lo) * frac;
        for r in ambient_oracle(&ambient, t, x1, DEFAULT_STEP).unwrap() {
            prop_assert!(r.within(1e-5), "{f}, c = {c}: {r:?}");
        }
    }
}

// ------------------------------------------------------------- rotational

#[derive(Debug, Clone)]
struct Case {
    theta: String,
    f: String,
    zeta0: f64,
    beta0: f64,
    n: usize,
}

fn case() -> impl Strategy<Value = Case> {
    (
        -0.3f64..0.3,
        0.5f64..2.0,
        -0.2f64..0.2,
        prop::sample::select(vec!["1", "exp(0.2*t)", "exp(-0.3*t)", "cosh(0.5*t)"]),
        -0.5f64..0.5,
        2.5f64..3.0,
        2usize..5,
    )
        .prop_map(|(a, b, c, f, zeta0, beta0, n)| Case {
            theta: format!("{a:.4}*cos({b:.4}*s) + {c:.4}"),
            f: f.to_string(),
            zeta0,
            beta0,
            n,
        })
}

fn build(c: &Case) -> RotationalSurface {
    let ambient = Ambient::new(
        Expression::parse(&c.f, "t").unwrap(),
        -100.0,
        100.0,
        0.0,
        c.n,
    )
    .unwrap();
    let profile = AngleProfile::new(Expression::parse(&c.theta, "s").unwrap(), 0.0, 2.0).unwrap();
    RotationalSurface::build(ambient, profile, c.zeta0, c.beta0, 64, 1e-10).unwrap()
}

fn structure(c: &Case, alpha: f64, q: Option<f64>) -> EinsteinTypeStructure {
    let u = match q {
        Some(q) => UMap::BaseRadial(RadialU::Expr(
            Expression::parse(&format!("{q:.4}*s^2 + s"), "s").unwrap(),
        )),
        None => UMap::Constant(1.0),
    };
    EinsteinTypeStructure::new(
        build(c).into(),
        alpha,
        u,
        ScalarField::Solve,
        ScalarField::Solve,
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn profiles_are_unit_speed(c in case()) {
        let r = build(&c);
        prop_assert!(r.arc_length_defect().unwrap() < 1e-10);
        for &s in r.grid() {
            prop_assert!(r.point(s).unwrap().sigma.value > 0.0);
        }
    }

    #[test]
    fn sigma_jet_matches_differences(c in case(), frac in 0.05f64..0.95) {
        let r = build(&c);
        let s = 2.0 * frac;
        let h = 1e-5;
        let sig = |t: f64| r.point(t).unwrap().sigma.value;
        let fd = (sig(s + h) - sig(s - h)) / (2.0 * h);
        prop_assert!((r.point(s).unwrap().sigma.d1 - fd).abs() < 1e-7);
    }

    #[test]
    fn height_hessian_identity(c in case()) {
        let r = build(&c);
        for &s in r.grid() {
            let g = r.geometry(s).unwrap();
            prop_assert!((hessian_height_extrinsic(&g) - g.hess_h).max_abs(c.n) < 1e-7);
        }
    }

    #[test]
    fn solved_fields_close_the_system(c in case(), alpha in 0.1f64..2.0, q in prop::option::of(-1.0f64..1.0)) {
        let st = structure(&c, alpha, q);
        for e in st.evaluate_grid().unwrap() {
            let a = e.residual_eq0001();
            prop_assert!(a.ss.abs() < 1e-8 && a.vv_perp.abs() < 1e-8 && a.vv_k.abs() < 1e-8);
            let b = e.residual_prop1();
            prop_assert!((a - b).max_abs(c.n) < 1e-9);
            let (intrinsic, trace, extrinsic) = e.u_scalar_curvature(alpha);
            prop_assert!((intrinsic - trace).abs() < 1e-8);
            prop_assert!((intrinsic - extrinsic).abs() < 1e-8);
        }
    }

    #[test]
    fn traceless_part_is_nonnegative(c in case(), frac in 0.0f64..1.0) {
        let r = build(&c);
        let g = r.geometry(2.0 * frac).unwrap();
        let phi2 = g.traceless_norm2();
        let d = g.shape.ss - g.shape.vv_k;
        let n = c.n as f64;
        prop_assert!(phi2 >= 0.0);
        prop_assert!((phi2 - (n - 1.0) / n * d * d).abs() < 1e-12 * (1.0 + phi2));
    }
}

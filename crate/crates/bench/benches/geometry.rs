use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use etl_core::fixtures::{make_fixture, FixtureParams};
use etl_core::oracle::{chart_for, clamp_interior, ricci_fd, DEFAULT_STEP};
use etl_core::rotational::representative_angles;
use etl_core::{build_surface, Ambient, AngleProfile, Expression};

fn surface_construction(c: &mut Criterion) {
    let theta = Expression::parse("sqrt(1-tanh(s)^2)", "s").unwrap();
    let zeta0 = 0.25f64.cosh().ln();
    let beta0 = 2.0 * 0.125f64.tanh().atan();
    c.bench_function("build_surface gudermannian 201", |b| {
        b.iter(|| {
            let profile = AngleProfile::new(theta.clone(), 0.25, 3.0).unwrap();
            build_surface(
                Ambient::euclidean_product(2),
                profile,
                zeta0,
                beta0,
                black_box(201),
            )
            .unwrap()
        })
    });
}

fn oracle(c: &mut Criterion) {
    let params = FixtureParams {
        n: Some(3),
        ..Default::default()
    };
    let st = make_fixture("gudermannian", &params)
        .unwrap()
        .build()
        .unwrap();
    let chart = chart_for(st.surface());
    let mut p = vec![1.0];
    p.extend(clamp_interior(&representative_angles(3)));
    c.bench_function("ricci_fd n=3", |b| {
        b.iter(|| ricci_fd(&chart, black_box(&p), DEFAULT_STEP).unwrap())
    });
}

fn residuals(c: &mut Criterion) {
    let st = make_fixture("constant_angle", &FixtureParams::default())
        .unwrap()
        .build()
        .unwrap();
    c.bench_function("residual_eq0001 constant_angle 201", |b| {
        b.iter(|| st.residual_eq0001(black_box(1e-8), &[]).unwrap())
    });
}

criterion_group!(benches, surface_construction, oracle, residuals);
criterion_main!(benches);

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use umbral_core::characters::{h_component, GroupClass};
use umbral_core::maass::indefinite::vartheta_indef;
use umbral_core::maass::rfunc::identity_theta_data;
use umbral_core::maass::{h_value, r_ab, tau1_identity_check};
use umbral_core::mocktheta::identity_suite;
use umbral_core::{rat, UpperHalfPoint};

fn exact(c: &mut Criterion) {
    let mut group = c.benchmark_group("exact");
    group.sample_size(10);
    for order in [10i64, 20, 40] {
        group.bench_with_input(BenchmarkId::new("h_component 1A r=1", order), &order, |b, &o| {
            b.iter(|| h_component(GroupClass::A1, 1, rat(o, 1)).unwrap())
        });
    }
    group.bench_function("identity suite, order 25", |b| b.iter(|| identity_suite(rat(25, 1)).unwrap()));
    group.finish();
}

fn numeric(c: &mut Criterion) {
    let tau = UpperHalfPoint::new(0.1, 0.8).unwrap();
    // warm the exact-coefficient cache so only evaluation is timed
    h_value(GroupClass::A2, 1, tau, 1e-10).unwrap();
    let mut group = c.benchmark_group("numeric");
    group.bench_function("r_ab", |b| b.iter(|| r_ab(black_box(1.0 / 30.0), -0.5, tau.dilate(15.0), 1e-12).unwrap()));
    group.bench_function("h_value 2A r=1", |b| b.iter(|| h_value(GroupClass::A2, 1, black_box(tau), 1e-10).unwrap()));
    let data = identity_theta_data(1).unwrap();
    group.bench_function("vartheta r=1", |b| b.iter(|| vartheta_indef(&data, black_box(tau), 1e-12).unwrap()));
    group.bench_function("theta quotient identity r=7", |b| b.iter(|| tau1_identity_check(7, black_box(tau), 1e-9).unwrap()));
    group.finish();
}

criterion_group!(benches, exact, numeric);
criterion_main!(benches);

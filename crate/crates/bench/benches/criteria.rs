use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use fv_core::basept::{successive_basept, BaseptProblem};
use fv_core::curve::CurveModel;
use fv_core::divcrit::{classify_div, holds_direct_div};
use fv_core::exactq::farey_set;
use fv_core::extremal::max_over_pairs;
use fv_core::floorcrit::{classify_crt, holds_direct, CrtInput};
use fv_core::oracle::{sweep, Suite, SweepConfig};
use fv_core::vanish::{successive_empty, AdjointProblem};
use fv_core::{pt, q, Divisor};

fn divisor(s: &str) -> Divisor {
    s.parse().expect("valid divisor")
}

fn floor(c: &mut Criterion) {
    let input = CrtInput::new(q(5, 7), q(1, 9), q(2, 7), q(0, 1), 10).expect("valid input");
    c.bench_function("floor/classify", |b| {
        b.iter(|| classify_crt(black_box(&input)))
    });
    c.bench_function("floor/direct", |b| {
        b.iter(|| holds_direct(black_box(&input)))
    });
}

fn divisors(c: &mut Criterion) {
    let delta = divisor("3/4@P + 1/5@R + 1/8@S");
    let b = divisor("1/8@P");
    c.bench_function("divisor/classify", |bn| {
        bn.iter(|| classify_div(black_box(&delta), black_box(&b), 8).expect("classifies"))
    });
    c.bench_function("divisor/direct", |bn| {
        bn.iter(|| holds_direct_div(black_box(&delta), black_box(&b), 8).expect("evaluates"))
    });
}

fn systems(c: &mut Criterion) {
    let p = AdjointProblem::new(
        CurveModel::P1,
        divisor("1@Q - 3/4@P - 1/8@R"),
        Divisor::zero(),
    )
    .expect("valid problem");
    c.bench_function("vanish/successive", |b| {
        b.iter(|| successive_empty(black_box(&p), 8).expect("classifies"))
    });
    let bp = BaseptProblem::new(
        CurveModel::P1,
        divisor("1@Q - 2/3@P - 1/3@R"),
        Divisor::zero(),
        pt("Q"),
    )
    .expect("valid problem");
    c.bench_function("basept/successive", |b| {
        b.iter(|| successive_basept(black_box(&bp), 8).expect("classifies"))
    });
}

fn tables(c: &mut Criterion) {
    c.bench_function("farey/set-30", |b| {
        b.iter(|| farey_set(black_box(30)).expect("order >= 1"))
    });
    c.bench_function("extremal/l2", |b| {
        b.iter(|| max_over_pairs(black_box(2), 14).expect("valid bound"))
    });
}

fn sweeps(c: &mut Criterion) {
    let mut cfg = SweepConfig::new(Suite::Floor);
    cfg.max_denominator = 5;
    cfg.max_n = 5;
    cfg.jobs = 1;
    let mut group = c.benchmark_group("sweep");
    group.sample_size(10);
    group.bench_function("floor-5", |b| {
        b.iter(|| sweep(black_box(&cfg)).expect("runs"))
    });
    group.finish();
}

criterion_group!(benches, floor, divisors, systems, tables, sweeps);
criterion_main!(benches);

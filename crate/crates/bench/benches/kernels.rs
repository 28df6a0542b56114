use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use qwk::highest_weight::{verma_truncation, VermaVariant};
use qwk::walgebra::{w_invariants, NamedNilpotent};
use qwk::{build_qn, Enveloping, Scalar, Weight};
use qwk_bench::{dense_quadratic, moyal_fixture, w_fixture};

fn structure(c: &mut Criterion) {
    c.bench_function("build_qn(4)", |b| b.iter(|| build_qn(black_box(4)).unwrap()));
}

fn pbw(c: &mut Criterion) {
    let q = build_qn(2).unwrap();
    let env = Enveloping::standard(q.clone());
    let word: Vec<usize> = (0..q.dim()).rev().collect();
    c.bench_function("normal_form reversed word q(2)", |b| b.iter(|| env.normal_form(black_box(&word), &Scalar::one())));
}

fn verma(c: &mut Criterion) {
    let lam = Weight::from_ints(&[1, 0]);
    c.bench_function("verma_truncation q(2) depth 3", |b| b.iter(|| verma_truncation(black_box(&lam), 3, VermaVariant::Verma).unwrap()));
}

fn walgebra(c: &mut Criterion) {
    let (d, m) = w_fixture(2, NamedNilpotent::Principal);
    let mut g = c.benchmark_group("w_invariants");
    g.sample_size(10);
    g.bench_function("q(2) principal cap 4", |b| b.iter(|| w_invariants(&d, &m, black_box(4), None).unwrap()));
    g.finish();
}

fn star(c: &mut Criterion) {
    let mw = moyal_fixture();
    let p = dense_quadratic(mw.basis.len(), &mw.basis.odd);
    c.bench_function("moyal star dense quadratic", |b| b.iter(|| mw.star(black_box(&p), &p, 2).unwrap()));
}

criterion_group!(benches, structure, pbw, verma, walgebra, star);
criterion_main!(benches);

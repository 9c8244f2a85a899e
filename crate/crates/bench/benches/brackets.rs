use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use ln4_core::autgrp::{compose, image_map};
use ln4_core::axioms::{check_homomorphism, jacobi_sweep};
use ln4_core::conformal::ConfElem;
use ln4_core::modes::{super_jacobi_window, verify_table};
use ln4_core::{AutSpec, ConformalAlgebra, Exponent, GammaParam, GenId, ModeAlgebra, TableKind};

fn lambda_brackets(c: &mut Criterion) {
    let alg = ConformalAlgebra::new(GammaParam::ratio(1, 3));
    let (g, q) = (ConfElem::gen(GenId::G1), ConfElem::gen(GenId::Q2));
    c.bench_function("lambda bracket G1 Q2", |b| b.iter(|| alg.lambda_bracket(black_box(&g), black_box(&q))));
    c.bench_function("jacobi sweep gamma=1/3", |b| b.iter(|| jacobi_sweep(black_box(&alg), 0)));
}

fn automorphisms(c: &mut Criterion) {
    let alg = ConformalAlgebra::centreless();
    let s: AutSpec = "theta([[1,t],[0,1]],[[1,0],[t^-1,1]])*tau(t+t^-1)*omega".parse().unwrap();
    c.bench_function("compose normal forms", |b| b.iter(|| compose(black_box(&s), black_box(&s))));
    c.bench_function("homomorphism check", |b| b.iter(|| check_homomorphism(&alg, &image_map(black_box(&s)))));
}

fn modes(c: &mut Criterion) {
    let alg = ModeAlgebra::new(TableKind::TwistedOmega, &GammaParam::Centreless).unwrap();
    let half = Exponent::new(5, 2);
    c.bench_function("mode bracket G1 Q2", |b| {
        b.iter(|| alg.monomial_bracket(GenId::G1, black_box(half), GenId::Q2, black_box(Exponent::new(-3, 2))))
    });
    let mut group = c.benchmark_group("tables");
    group.sample_size(10);
    group.bench_function("verify twisted window 1", |b| {
        b.iter(|| verify_table(TableKind::TwistedOmega, 1, &GammaParam::Centreless, 0).unwrap())
    });
    group.bench_function("super jacobi untwisted window 1", |b| {
        b.iter(|| super_jacobi_window(TableKind::UntwistedGamma, 1, &GammaParam::ratio(1, 2), 0).unwrap())
    });
    group.finish();
}

criterion_group!(benches, lambda_brackets, automorphisms, modes);
criterion_main!(benches);

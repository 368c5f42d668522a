//! Criterion benchmarks for the hot paths: factorization, spectrum
//! enumeration, candidate scans and full certificate runs.

use criterion::{criterion_group, criterion_main, Criterion};
use std::collections::BTreeSet;
use std::hint::black_box;

use odchar::arith::FactoredInteger;
use odchar::catalog;
use odchar::certify;
use odchar::graph;
use odchar::unitary::{self, UnitaryParams};

fn bench_factorize(c: &mut Criterion) {
    // |U_4(97)| expanded: a ~98-digit-free product of torus terms
    let params = UnitaryParams::u4(97, 1).unwrap();
    let value = unitary::order_u(&params).unwrap().value().clone();
    c.bench_function("factorize |U_4(97)|", |b| {
        b.iter(|| FactoredInteger::factorize(black_box(&value)).unwrap())
    });
    c.bench_function("factorize 2^61-1 (Mersenne prime)", |b| {
        let m61 = (num_bigint::BigUint::from(1u32) << 61) - 1u32;
        b.iter(|| FactoredInteger::factorize(black_box(&m61)).unwrap())
    });
}

fn bench_spectrum(c: &mut Criterion) {
    let params = UnitaryParams::u4(97, 1).unwrap();
    c.bench_function("spectrum_u(U_4(97))", |b| {
        b.iter(|| unitary::spectrum_u(black_box(&params)).unwrap())
    });
    c.bench_function("build_gk(U_4(97))", |b| {
        let order = unitary::order_u(&params).unwrap();
        let mu = unitary::mu_u4(&params).unwrap();
        b.iter(|| graph::build_gk(black_box(&mu), black_box(&order)).unwrap())
    });
}

fn bench_scans(c: &mut Criterion) {
    let params = UnitaryParams::u4(3, 2).unwrap();
    let order = unitary::order_u(&params).unwrap();
    c.bench_function("candidates(|U_4(9)|, {41,73})", |b| {
        b.iter(|| catalog::candidates(black_box(&order), black_box(&[41, 73])).unwrap())
    });
    let p49 = UnitaryParams::u4(7, 2).unwrap();
    let allowed: BTreeSet<u64> = unitary::order_u(&p49)
        .unwrap()
        .prime_set_u64()
        .unwrap()
        .into_iter()
        .collect();
    c.bench_function("lie_with_prime(1201, pi(U_4(49)))", |b| {
        b.iter(|| catalog::lie_with_prime(black_box(1201), black_box(&allowed)).unwrap())
    });
}

fn bench_verify(c: &mut Criterion) {
    c.bench_function("verify_u3(31)", |b| {
        b.iter(|| certify::verify_u3(black_box(31), black_box(1)).unwrap())
    });
    c.bench_function("verify_u4(49)", |b| {
        b.iter(|| certify::verify_u4(black_box(7), black_box(2)).unwrap())
    });
    c.bench_function("verify_u4(61) with realization search", |b| {
        b.iter(|| certify::verify_u4(black_box(61), black_box(1)).unwrap())
    });
}

criterion_group!(benches, bench_factorize, bench_spectrum, bench_scans, bench_verify);
criterion_main!(benches);

//! Benchmarks for the hot kernels: sieving, model convolution,
//! perturbation partial sums, the KS statistic, a deterministic rho
//! split, and the normal CDF.

use criterion::{black_box, criterion_group, criterion_main, Criterion};
use ekstats_core::{
    factor_u128, ks_statistic, mertens_sum, model_sn, normal_cdf, omega_range, partial_epsilon_sum,
    primes_upto, PerturbedDistribution, PrimeTuple,
};

fn bench_sieves(c: &mut Criterion) {
    c.bench_function("primes_upto_1e6", |b| {
        b.iter(|| primes_upto(black_box(1_000_000)).unwrap().len())
    });
    c.bench_function("omega_range_1e6", |b| {
        b.iter(|| omega_range(1, black_box(1_000_000)).unwrap().counts()[999_999])
    });
    c.bench_function("mertens_sum_1e6", |b| {
        b.iter(|| mertens_sum(black_box(1_000_000)).unwrap())
    });
}

fn bench_model(c: &mut Criterion) {
    c.bench_function("model_convolution_1e6_r3", |b| {
        b.iter(|| model_sn(black_box(1_000_000), 3).unwrap().raw_moments[3])
    });
}

fn bench_partial_sums(c: &mut Criterion) {
    let d = PerturbedDistribution::harmonic(100_000).unwrap();
    let tuple = PrimeTuple::new(vec![2]).unwrap();
    c.bench_function("partial_epsilon_sum_harmonic_1e5_p2", |b| {
        b.iter(|| partial_epsilon_sum(black_box(&d), &tuple).unwrap().value)
    });
}

fn bench_ks(c: &mut Criterion) {
    let d = PerturbedDistribution::uniform(100_000).unwrap();
    c.bench_function("ks_statistic_uniform_1e5", |b| {
        b.iter(|| ks_statistic(black_box(&d)).unwrap().statistic)
    });
}

fn bench_factor(c: &mut Criterion) {
    // A balanced semiprime near 2^60 exercises the rho split.
    let n: u128 = 1_000_000_007u128 * 1_000_000_009u128;
    c.bench_function("factor_semiprime_2e18", |b| {
        b.iter(|| factor_u128(black_box(n)).unwrap().len())
    });
}

fn bench_normal(c: &mut Criterion) {
    c.bench_function("normal_cdf_grid", |b| {
        b.iter(|| {
            let mut acc = 0.0f64;
            let mut x = -8.0f64;
            while x <= 8.0 {
                acc += normal_cdf(black_box(x)).unwrap();
                x += 0.125;
            }
            acc
        })
    });
}

criterion_group!(
    benches,
    bench_sieves,
    bench_model,
    bench_partial_sums,
    bench_ks,
    bench_factor,
    bench_normal
);
criterion_main!(benches);

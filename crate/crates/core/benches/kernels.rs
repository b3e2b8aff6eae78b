//! Default rayon pool versus a single-thread pool on the exhaustive scans.
//!
//! Built with `--no-default-features` the library scans run sequentially
//! in both groups, which gives the fallback's timings.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use addix::additive::{additive_kernel, KernelMethod};
use addix::charsum::{CharSumAnalyzer, MultChar};
use addix::verify::{run_criterion, VerifyConfig};
use addix::{sample, Field, Poly};

fn pools() -> Vec<(&'static str, rayon::ThreadPool)> {
    let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let default = rayon::ThreadPoolBuilder::new().build().unwrap();
    vec![("1-thread", single), ("pool", default)]
}

fn decomposable(f: &Field, seed: u64) -> Poly {
    sample::random_decomposable(f, &mut sample::rng(seed, 0))
}

fn bench_brute_kernel(c: &mut Criterion) {
    let mut group = c.benchmark_group("brute_kernel");
    group.sample_size(10);
    for (p, n) in [(2, 8), (2, 10), (3, 6)] {
        let f = Field::new(p, n, None).unwrap();
        let poly = decomposable(&f, 11);
        for (name, pool) in pools() {
            group.bench_with_input(BenchmarkId::new(name, f.q()), &poly, |b, poly| {
                b.iter(|| pool.install(|| additive_kernel(poly, KernelMethod::Brute).unwrap()))
            });
        }
    }
    group.finish();
}

fn bench_values(c: &mut Criterion) {
    let mut group = c.benchmark_group("values");
    let f = Field::new(2, 12, None).unwrap();
    let poly = sample::random_poly(&f, 40, &mut sample::rng(3, 0));
    for (name, pool) in pools() {
        group.bench_function(BenchmarkId::new(name, f.q()), |b| {
            b.iter(|| pool.install(|| poly.values()))
        });
    }
    group.finish();
}

fn bench_char_sums(c: &mut Criterion) {
    let mut group = c.benchmark_group("char_sum");
    let f = Field::new(2, 12, None).unwrap();
    let a = CharSumAnalyzer::new(&decomposable(&f, 5)).unwrap();
    let chi = MultChar::new(&f, 7).unwrap();
    for (name, pool) in pools() {
        group.bench_function(BenchmarkId::new(name, f.q()), |b| {
            b.iter(|| pool.install(|| a.sum(&chi).unwrap()))
        });
    }
    group.finish();
}

fn bench_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_sweep");
    group.sample_size(10);
    let cfg = VerifyConfig::default();
    for id in ["3", "8"] {
        for (name, pool) in pools() {
            group.bench_function(BenchmarkId::new(name, id), |b| {
                b.iter(|| pool.install(|| run_criterion(id, &cfg).unwrap()))
            });
        }
    }
    group.finish();
}

criterion_group!(benches, bench_brute_kernel, bench_values, bench_char_sums, bench_sweep);
criterion_main!(benches);

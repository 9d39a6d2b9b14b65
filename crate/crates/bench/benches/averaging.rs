use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use warpmean_bench::{random_sample, random_series};
use warpmean_core::{dba, dtw, dtw_distance, exact_mean_dp, medoid, ssg, DpGuard, HeuristicConfig};

fn bench_dtw(c: &mut Criterion) {
    let x = random_series(1, 100);
    let y = random_series(2, 100);
    c.bench_function("dtw/distance/n=100", |b| {
        b.iter(|| dtw_distance(black_box(&x), black_box(&y)))
    });
    c.bench_function("dtw/with-path/n=100", |b| {
        b.iter(|| dtw(black_box(&x), black_box(&y)))
    });
}

fn bench_exact(c: &mut Criterion) {
    let guard = DpGuard::default();
    let mut group = c.benchmark_group("exact-mean");
    group.sample_size(10);
    for n in [24usize, 48, 96] {
        let sample = random_sample(3, 2, n);
        group.bench_function(format!("pair/n={n}"), |b| {
            b.iter(|| exact_mean_dp(black_box(&sample), &guard).unwrap())
        });
    }
    for n in [12usize, 16, 20] {
        let sample = random_sample(4, 3, n);
        group.bench_function(format!("triple/n={n}"), |b| {
            b.iter(|| exact_mean_dp(black_box(&sample), &guard).unwrap())
        });
    }
    group.finish();
}

fn bench_heuristics(c: &mut Criterion) {
    let sample = random_sample(5, 10, 100);
    c.bench_function("medoid/k=10/n=100", |b| b.iter(|| medoid(black_box(&sample))));
    let dba_config = HeuristicConfig {
        max_iterations: 10,
        ..HeuristicConfig::default()
    };
    c.bench_function("dba/k=10/n=100/iters=10", |b| {
        b.iter(|| dba(black_box(&sample), &dba_config).unwrap())
    });
    let ssg_config = HeuristicConfig::default();
    c.bench_function("ssg/k=10/n=100/iters=200", |b| {
        b.iter(|| ssg(black_box(&sample), &ssg_config).unwrap())
    });
}

criterion_group!(benches, bench_dtw, bench_exact, bench_heuristics);
criterion_main!(benches);

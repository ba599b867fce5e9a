use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rayon::ThreadPoolBuilder;

use sghom::forbid::{forbid_table, max_forbidden, twenty_case_spec, ForbidOptions};
use sghom::random::{gnp, rng};
use sghom::reduce::Theorem;
use sghom::target::{min_common_neighbors, rho_sp_plus};
use sghom::{discharge, Sign};

fn pools() -> Vec<(&'static str, rayon::ThreadPool)> {
    let default = rayon::current_num_threads();
    vec![
        ("sequential", ThreadPoolBuilder::new().num_threads(1).build().unwrap()),
        ("parallel", ThreadPoolBuilder::new().num_threads(default).build().unwrap()),
    ]
}

fn bench_forbid(c: &mut Criterion) {
    let t = rho_sp_plus(9).unwrap();
    let spec = twenty_case_spec(1).unwrap();
    let mut group = c.benchmark_group("forbid");
    group.sample_size(10);
    for (name, pool) in pools() {
        group.bench_function(BenchmarkId::new("table", name), |b| {
            b.iter(|| pool.install(|| forbid_table(&t, Sign::Positive).unwrap()))
        });
        group.bench_function(BenchmarkId::new("sampled", name), |b| {
            b.iter(|| pool.install(|| max_forbidden(&t, &spec, ForbidOptions::sampled(0, 50_000)).unwrap()))
        });
    }
    group.finish();
}

fn bench_targets(c: &mut Criterion) {
    let t = rho_sp_plus(13).unwrap();
    let mut group = c.benchmark_group("targets");
    for (name, pool) in pools() {
        group.bench_function(BenchmarkId::new("min_common_3", name), |b| {
            b.iter(|| pool.install(|| min_common_neighbors(&t, 3)))
        });
    }
    group.finish();
}

fn bench_discharge(c: &mut Criterion) {
    let g = gnp(2000, 0.003, &mut rng(1));
    let mut group = c.benchmark_group("discharge");
    for (name, pool) in pools() {
        group.bench_function(BenchmarkId::new("sp5", name), |b| {
            b.iter(|| pool.install(|| discharge::run_discharge(&g, Theorem::Sp5).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_forbid, bench_targets, bench_discharge);
criterion_main!(benches);

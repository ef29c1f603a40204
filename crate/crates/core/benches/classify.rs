use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use rwmaps::classifier::{verify_theorem_tables, FamilyKind};
use rwmaps::families::{construct_family_i, construct_family_iv};
use rwmaps::Parallelism;

const PATHS: [(&str, Parallelism); 2] = [("sequential", Parallelism::Sequential), ("parallel", Parallelism::Parallel)];

fn family_i(c: &mut Criterion) {
    let mut group = c.benchmark_group("family_i_n24");
    for (name, par) in PATHS {
        group.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| construct_family_i(24, par).unwrap()));
    }
    group.finish();
}

fn family_iv(c: &mut Criterion) {
    let mut group = c.benchmark_group("family_iv_m2");
    group.sample_size(10);
    for (name, par) in PATHS {
        group.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| construct_family_iv(2, 2, par).unwrap()));
    }
    group.finish();
}

fn table_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_family_ii_max12");
    group.sample_size(10);
    for (name, par) in PATHS {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| verify_theorem_tables(FamilyKind::Ii, 12, par).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, family_i, family_iv, table_sweep);
criterion_main!(benches);

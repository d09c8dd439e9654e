use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use permbase::base::reg_l_m;
use permbase::constructions::{build_str, Budgets};
use permbase::distinguishing::{count_tm, power_set_regular_orbits};
use permbase::par;
use permbase::perm::PermutationGroup;
use permbase::saxl::{saxl_report, DEFAULT_SWEEP_BUDGET};

fn group(spec: &str) -> PermutationGroup {
    build_str(spec, &Budgets::default()).unwrap().fixture.group
}

/// Worker counts compared: one thread against the default pool.
fn pools() -> [(&'static str, usize); 2] {
    [("sequential", 1), ("parallel", 0)]
}

fn partitions(c: &mut Criterion) {
    let g = group("pgaml2:8");
    let mut grp = c.benchmark_group("t3 pgaml2:8");
    grp.sample_size(10);
    for (name, threads) in pools() {
        grp.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| par::with_threads(threads, || count_tm(black_box(&g), 3).unwrap()))
        });
    }
    grp.finish();
}

fn power_set(c: &mut Criterion) {
    let g = group("o4minus2");
    let mut grp = c.benchmark_group("power set o4minus2");
    grp.sample_size(10);
    for (name, threads) in pools() {
        grp.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| par::with_threads(threads, || power_set_regular_orbits(black_box(&g)).unwrap()))
        });
    }
    grp.finish();
}

fn reg(c: &mut Criterion) {
    let g = group("pgaml2:16");
    let mut grp = c.benchmark_group("reg4 pgaml2:16");
    grp.sample_size(10);
    for (name, threads) in pools() {
        grp.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| par::with_threads(threads, || reg_l_m(black_box(&g), 4).unwrap()))
        });
    }
    grp.finish();
}

fn saxl(c: &mut Criterion) {
    let g = group("psl2:13/pairs");
    let mut grp = c.benchmark_group("saxl psl2:13/pairs");
    grp.sample_size(10);
    for (name, threads) in pools() {
        grp.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| {
                par::with_threads(threads, || saxl_report(black_box(&g), DEFAULT_SWEEP_BUDGET).unwrap())
            })
        });
    }
    grp.finish();
}

criterion_group!(benches, partitions, power_set, reg, saxl);
criterion_main!(benches);

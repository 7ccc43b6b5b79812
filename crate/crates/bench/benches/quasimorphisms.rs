use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use meyerkit::exact::integer;
use meyerkit::freegroup::{ball, defect_max, quasi_kernel_cover};
use meyerkit_bench::brooks;

fn balls(c: &mut Criterion) {
    let mut group = c.benchmark_group("ball");
    for r in [4, 6, 8] {
        group.bench_with_input(BenchmarkId::from_parameter(r), &r, |b, &r| b.iter(|| ball(2, black_box(r)).len()));
    }
    group.finish();
}

fn defect(c: &mut Criterion) {
    let mut group = c.benchmark_group("defect_max");
    group.sample_size(10);
    for w in ["ab", "aba"] {
        let f = brooks(w);
        group.bench_with_input(BenchmarkId::new(w, 4), &f, |b, f| {
            b.iter(|| defect_max(black_box(f), 4, None).unwrap().max_defect)
        });
    }
    group.finish();
}

fn kernel_cover(c: &mut Criterion) {
    let f = brooks("ab");
    let mut group = c.benchmark_group("quasi_kernel_cover");
    group.sample_size(10);
    group.bench_function("ab R=6 radius 4", |b| {
        b.iter(|| quasi_kernel_cover(black_box(&f), &integer(6), &integer(3), 4).unwrap().certificate.size())
    });
    group.finish();
}

criterion_group!(benches, balls, defect, kernel_cover);
criterion_main!(benches);

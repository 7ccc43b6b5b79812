use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use meyerkit::cps::{generate_patch, good_model_tower, graph_min_gap};
use meyerkit_bench::{fibonacci_unit_window, symmetric_box};

fn patch_generation(c: &mut Criterion) {
    let (s, w) = fibonacci_unit_window();
    let mut group = c.benchmark_group("generate_patch");
    for r in [50, 200, 800] {
        let bx = symmetric_box(r);
        group.bench_with_input(BenchmarkId::from_parameter(r), &bx, |b, bx| {
            b.iter(|| generate_patch(black_box(&s), &w, bx).unwrap().len())
        });
    }
    group.finish();
}

fn tower(c: &mut Criterion) {
    let (s, w) = fibonacci_unit_window();
    let bx = symmetric_box(50);
    c.bench_function("good_model_tower depth 5", |b| {
        b.iter(|| good_model_tower(black_box(&s), &w, 5, &bx).unwrap().0.verified())
    });
}

fn graph(c: &mut Criterion) {
    let (s, _) = fibonacci_unit_window();
    c.bench_function("graph_min_gap radius 20", |b| b.iter(|| graph_min_gap(black_box(&s), 20).unwrap().gap));
}

criterion_group!(benches, patch_generation, tower, graph);
criterion_main!(benches);

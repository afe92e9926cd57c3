use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use colperm::ferrers::FerrersBound;
use colperm::verify::{self, TheoremId, VerifyParams};
use colperm::{codes, poly, stats, ColoredPermutation};

fn sample(r: usize, n: usize) -> ColoredPermutation {
    // a fixed, well-mixed element: bases by a stride walk, colors cycling
    let bases: Vec<usize> = (0..n).map(|i| (i * 5 + 3) % n + 1).collect();
    let colors: Vec<usize> = (0..n).map(|i| (i * 7 + 1) % r).collect();
    ColoredPermutation::from_parts(r, &bases, &colors).unwrap()
}

fn element_kernels(c: &mut Criterion) {
    let mut g = c.benchmark_group("element");
    for n in [8usize, 32, 128] {
        let p = sample(3, n);
        g.bench_with_input(BenchmarkId::new("length", n), &p, |b, p| b.iter(|| stats::length(black_box(p))));
        g.bench_with_input(BenchmarkId::new("sorting_index", n), &p, |b, p| {
            b.iter(|| codes::sorting_index(black_box(p)))
        });
        g.bench_with_input(BenchmarkId::new("set_stats", n), &p, |b, p| b.iter(|| stats::set_stats(black_box(p))));
        g.bench_with_input(BenchmarkId::new("phi", n), &p, |b, p| b.iter(|| codes::phi(black_box(p))));
    }
    g.finish();
}

fn polynomial_kernels(c: &mut Criterion) {
    let mut g = c.benchmark_group("gf");
    for n in [3usize, 5] {
        let f = FerrersBound::full(n);
        g.bench_with_input(BenchmarkId::new("main_b", n), &f, |b, f| b.iter(|| poly::gf_main_b(3, black_box(f))));
        g.bench_with_input(BenchmarkId::new("d", n), &f, |b, f| b.iter(|| poly::gf_d(black_box(f))));
    }
    g.finish();
}

fn harness(c: &mut Criterion) {
    let params = VerifyParams::new(3, 3).all_bounds();
    c.bench_function("verify/main-a r=3 n=3", |b| {
        b.iter(|| verify::check(TheoremId::MainA, black_box(&params)).unwrap())
    });
}

criterion_group!(benches, element_kernels, polynomial_kernels, harness);
criterion_main!(benches);

use arccos_bounds::analysis::find_minimum;
use arccos_bounds::sharp::carlson_lower_margin;
use arccos_bounds::verifier::verify_bounds;
use arccos_bounds::{bound_pair, classify_abc, f_a, GridSpec, A_STAR, TWO_SQRT_2};
use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

fn pointwise(c: &mut Criterion) {
    let mut g = c.benchmark_group("pointwise");
    for x in [1e-9, 0.5, 1.0 - 1e-9] {
        g.bench_with_input(BenchmarkId::new("f_a", x), &x, |b, &x| b.iter(|| f_a(black_box(2.7), black_box(x))));
        g.bench_with_input(BenchmarkId::new("bound_pair", x), &x, |b, &x| {
            b.iter(|| bound_pair(black_box(2.7), black_box(x)))
        });
        g.bench_with_input(BenchmarkId::new("carlson_margin", x), &x, |b, &x| {
            b.iter(|| carlson_lower_margin(black_box(x)))
        });
    }
    g.finish();
}

fn minimum(c: &mut Criterion) {
    let a = (A_STAR + TWO_SQRT_2) / 2.0;
    c.bench_function("find_minimum", |b| b.iter(|| find_minimum(black_box(a))));
}

fn sweeps(c: &mut Criterion) {
    let mut g = c.benchmark_group("sweeps");
    g.sample_size(10);
    for n in [10_000, 100_000] {
        let grid = GridSpec::refined(n);
        g.bench_with_input(BenchmarkId::new("verify_bounds", n), &grid, |b, grid| {
            b.iter(|| verify_bounds(black_box(0.0), grid))
        });
        g.bench_with_input(BenchmarkId::new("classify_abc", n), &grid, |b, grid| {
            b.iter(|| classify_abc(0.5, 0.5, black_box(2.75), grid))
        });
    }
    g.finish();
}

criterion_group!(benches, pointwise, minimum, sweeps);
criterion_main!(benches);

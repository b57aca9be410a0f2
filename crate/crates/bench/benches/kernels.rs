use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use rss_core::expo::{level_norm, GradedCoeffs};
use rss_core::index::IndexSet;
use rss_core::polar::polar_vertices;
use rss_core::{map_norm, sample, Guards, PolytopeSpace, Rat};

fn polar(c: &mut Criterion) {
    let mut g = c.benchmark_group("polar_vertices");
    for dim in [3usize, 4, 5] {
        let mut rng = sample::rng(11);
        let space = sample::space(&mut rng, dim, "x");
        g.bench_with_input(BenchmarkId::from_parameter(dim), &space, |b, s| {
            b.iter(|| polar_vertices(black_box(s.q()), s.dim()).unwrap())
        });
    }
    g.finish();
}

fn mapnorm(c: &mut Criterion) {
    let mut g = c.benchmark_group("map_norm");
    for dim in [3usize, 5, 8] {
        let mut rng = sample::rng(12);
        let a = sample::space(&mut rng, dim, "a");
        let b = sample::space(&mut rng, dim, "b");
        let m = sample::matrix(&mut rng, a.index(), b.index());
        g.bench_function(BenchmarkId::from_parameter(dim), |bench| {
            bench.iter(|| map_norm(black_box(&a), black_box(&b), black_box(&m)).unwrap())
        });
    }
    g.finish();
}

fn levelnorm(c: &mut Criterion) {
    let a = PolytopeSpace::sup_norm(IndexSet::numbered("b", 2));
    let f = GradedCoeffs::from_terms(2, 2, [(vec![0, 1], Rat::from_integer(1.into()))]).unwrap();
    let guards = Guards::default();
    let mut g = c.benchmark_group("level_norm");
    for n in [10usize, 20, 40] {
        g.bench_function(BenchmarkId::from_parameter(n), |bench| {
            bench.iter(|| level_norm(&a, &f, black_box(n), &guards).unwrap())
        });
    }
    g.finish();
}

criterion_group!(kernels, polar, mapnorm, levelnorm);
criterion_main!(kernels);

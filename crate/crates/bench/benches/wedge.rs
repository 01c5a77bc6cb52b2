use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use wedge_bench::{disc, simplex};
use wedge_core::{
    apply_map, are_equivalent, convex_hull, lattice_points_of_polytope, wedge_power,
    AffineUnimodularMap, Method, WedgeBitmap, WedgeQuery,
};

fn planar_wedge(c: &mut Criterion) {
    let mut group = c.benchmark_group("planar_wedge");
    let base = disc(2);
    for p in [2, 4, 6] {
        let q = WedgeQuery::new(base.clone(), p);
        group.bench_with_input(BenchmarkId::new("dp", p), &q, |b, q| {
            b.iter(|| wedge_power(black_box(q), Method::Dp).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("naive", p), &q, |b, q| {
            b.iter(|| wedge_power(black_box(q), Method::Naive).unwrap())
        });
    }
    group.finish();
}

fn spatial_wedge(c: &mut Criterion) {
    let mut group = c.benchmark_group("spatial_wedge");
    group.sample_size(10);
    let base = simplex(6);
    for p in [10, 42] {
        group.bench_with_input(BenchmarkId::from_parameter(p), &p, |b, &p| {
            b.iter(|| WedgeBitmap::compute(black_box(&base), p).unwrap())
        });
    }
    group.finish();
}

fn hull(c: &mut Criterion) {
    let base = disc(30);
    c.bench_function("hull_lattice_points_disc30", |b| {
        b.iter(|| lattice_points_of_polytope(&convex_hull(black_box(&base)).unwrap()).unwrap())
    });
}

fn equivalence(c: &mut Criterion) {
    let base = disc(4);
    let t = AffineUnimodularMap::new(&[vec![2, 1], vec![1, 1]], &[5, -3]).unwrap();
    let image = apply_map(&t, &base).unwrap();
    c.bench_function("equivalence_disc4", |b| {
        b.iter(|| are_equivalent(black_box(&base), black_box(&image)).unwrap())
    });
}

criterion_group!(benches, planar_wedge, spatial_wedge, hull, equivalence);
criterion_main!(benches);

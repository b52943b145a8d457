use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use fockcum::digraph::{cover_poly, cycle_cover_poly, cycle_indicator, CoverVariant, Method};
use fockcum::fock::q_factorial;
use fockcum::MultiPoly;
use fockcum_bench::{complete_digraph, weighted_ring};

fn poly_arithmetic(c: &mut Criterion) {
    let q = MultiPoly::var(&["q"], "q").unwrap();
    c.bench_function("q_factorial_10", |b| b.iter(|| q_factorial(black_box(&q), 10)));
    let f = q_factorial(&q, 8);
    c.bench_function("poly_square_deg28", |b| b.iter(|| black_box(&f).try_mul(&f).unwrap()));
}

fn cover_polys(c: &mut Criterion) {
    let mut g = c.benchmark_group("cycle_cover");
    for n in [4, 6, 7] {
        let graph = complete_digraph(n);
        g.bench_with_input(BenchmarkId::new("cut_fuse", n), &graph, |b, gr| {
            b.iter(|| cycle_cover_poly(gr, Method::CutFuse).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("brute_force", n), &graph, |b, gr| {
            b.iter(|| cycle_cover_poly(gr, Method::BruteForce).unwrap())
        });
    }
    g.finish();
    let graph = complete_digraph(5);
    c.bench_function("factorial_cover_k5", |b| {
        b.iter(|| cover_poly(&graph, CoverVariant::Factorial, Method::CutFuse).unwrap())
    });
    let ring = weighted_ring(10);
    c.bench_function("cycle_indicator_ring10", |b| b.iter(|| cycle_indicator(&ring, Method::CutFuse).unwrap()));
}

criterion_group!(benches, poly_arithmetic, cover_polys);
criterion_main!(benches);

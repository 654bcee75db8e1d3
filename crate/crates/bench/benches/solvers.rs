use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use energy_bounds::bounds::{bound_sdp_adjacency, fractional_clique_cover, independence_number};
use energy_bounds::sdp::theta_minus;
use energy_bounds::eigenvalues;
use energy_bounds_bench::graph;

fn eigen(c: &mut Criterion) {
    let a = graph("johnson(8,3)").adjacency_matrix();
    c.bench_function("eigenvalues johnson(8,3)", |b| b.iter(|| eigenvalues(black_box(&a)).unwrap()));
}

fn lp(c: &mut Criterion) {
    let g = graph("chvatal");
    c.bench_function("chi_f lp chvatal", |b| b.iter(|| fractional_clique_cover(black_box(&g)).unwrap()));
}

fn sdp(c: &mut Criterion) {
    let g = graph("petersen");
    let mut group = c.benchmark_group("sdp");
    group.sample_size(10);
    group.bench_function("theta_minus petersen", |b| b.iter(|| theta_minus(black_box(&g)).unwrap()));
    group.bench_function("sdp4 search petersen", |b| b.iter(|| bound_sdp_adjacency(black_box(&g)).unwrap()));
    group.finish();
}

fn alpha(c: &mut Criterion) {
    let g = graph("johnson(8,3)");
    c.bench_function("alpha johnson(8,3)", |b| b.iter(|| independence_number(black_box(&g)).unwrap()));
}

criterion_group!(benches, eigen, lp, sdp, alpha);
criterion_main!(benches);

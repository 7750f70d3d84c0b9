use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use ecgraph::connect::{is_colour_connected, is_trail_colour_connected};
use ecgraph::factor::{alternating_cycle_factor, eulerian_factor};
use ecgraph::matching::maximum_matching;
use ecgraph::merge::alternating_hamiltonian_cycle;
use ecgraph::supereuler::supereulerian;
use ecgraph_bench::{blowup, plain, random_2ec, SIZES};

fn factors(c: &mut Criterion) {
    let mut group = c.benchmark_group("factors");
    for n in SIZES {
        let g = random_2ec(n, 11);
        group.bench_with_input(BenchmarkId::new("eulerian", n), &g, |b, g| b.iter(|| eulerian_factor(black_box(g))));
        group.bench_with_input(BenchmarkId::new("cycle", n), &g, |b, g| b.iter(|| alternating_cycle_factor(black_box(g))));
        let p = plain(&g);
        group.bench_with_input(BenchmarkId::new("matching", n), &p, |b, p| b.iter(|| maximum_matching(black_box(p))));
    }
    group.finish();
}

fn connectivity(c: &mut Criterion) {
    let mut group = c.benchmark_group("connectivity");
    for n in SIZES {
        let g = random_2ec(n, 12);
        group.bench_with_input(BenchmarkId::new("paths", n), &g, |b, g| b.iter(|| is_colour_connected(black_box(g))));
        group.bench_with_input(BenchmarkId::new("trails", n), &g, |b, g| {
            b.iter(|| is_trail_colour_connected(black_box(g)))
        });
    }
    group.finish();
}

fn spanning(c: &mut Criterion) {
    let mut group = c.benchmark_group("spanning");
    group.sample_size(20);
    for n in SIZES {
        let g = blowup(n, 13);
        group.bench_with_input(BenchmarkId::new("hamiltonian", n), &g, |b, g| {
            b.iter(|| alternating_hamiltonian_cycle(black_box(g)))
        });
        group.bench_with_input(BenchmarkId::new("supereulerian", n), &g, |b, g| b.iter(|| supereulerian(black_box(g))));
    }
    group.finish();
}

criterion_group!(benches, factors, connectivity, spanning);
criterion_main!(benches);

use criterion::{black_box, criterion_group, criterion_main, Criterion};

use gpi_core::constructions::{fixture, m2_family};
use gpi_core::exponent::{phi_max, zeta_root};
use gpi_core::pi::{self, build_alternating_nonidentity, CodimMode};

fn codimension(c: &mut Criterion) {
    let ut2 = fixture("ut2-z2").unwrap();
    let m2 = m2_family(3, 0, &[2, 1]).unwrap();
    let mut g = c.benchmark_group("codimension");
    g.sample_size(10);
    g.bench_function("ut2-z2 graded n=6", |b| {
        b.iter(|| pi::codimension(black_box(&ut2), 6, CodimMode::Graded, pi::DEFAULT_BUDGET).unwrap())
    });
    g.bench_function("m2_family(3,0,[2,1]) graded n=4", |b| {
        b.iter(|| pi::codimension(black_box(&m2), 4, CodimMode::Graded, pi::DEFAULT_BUDGET).unwrap())
    });
    g.finish();
}

fn witness(c: &mut Criterion) {
    let non_triangle = m2_family(3, 0, &[2, 1]).unwrap();
    let triangle = m2_family(2, 0, &[1, 1]).unwrap();
    let mut g = c.benchmark_group("witness");
    g.sample_size(10);
    g.bench_function("non-triangle n=6", |b| b.iter(|| build_alternating_nonidentity(black_box(&non_triangle), 6).unwrap()));
    g.bench_function("triangle n=8", |b| b.iter(|| build_alternating_nonidentity(black_box(&triangle), 8).unwrap()));
    g.finish();
}

fn zeta(c: &mut Criterion) {
    let gamma = [-1, -1, 0, 0, 0, 1, 1, 1];
    c.bench_function("zeta_root r=8", |b| b.iter(|| zeta_root(black_box(&gamma)).unwrap()));
    c.bench_function("phi_max r=8", |b| b.iter(|| phi_max(black_box(&gamma)).unwrap()));
}

criterion_group!(benches, codimension, witness, zeta);
criterion_main!(benches);

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use gwa_bench::{classical, quantum};
use gwa_core::homology::compare_h0;
use gwa_core::percomplex::{per_diff, random_cochain};
use gwa_core::{build_star, Gwa, GwaElement};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn multiply(c: &mut Criterion) {
    let g = Gwa::new(quantum(&[0, 2, -3, 1]));
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (u, v) = (g.random_element(&mut rng, 12, 6), g.random_element(&mut rng, 12, 6));
    c.bench_function("mul/quantum deg 3", |b| b.iter(|| g.mul(black_box(&u), black_box(&v))));
}

fn differential(c: &mut Criterion) {
    let g = Gwa::new(quantum(&[-1, 0, 1]));
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let m = g.a_nu();
    let cochain = random_cochain(&g, &mut rng, 2, &m, 8, 4);
    c.bench_function("per_diff/degree 2", |b| b.iter(|| per_diff(&g, black_box(&cochain)).unwrap()));
}

fn star(c: &mut Criterion) {
    let sp = build_star(classical(&[0, -1, 1]), 4).unwrap();
    let g = sp.gwa().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (u, v) = (g.random_element(&mut rng, 6, 3), g.random_element(&mut rng, 6, 3));
    c.bench_function("star/classical N=4 cold", |b| {
        b.iter(|| {
            let sp = build_star(classical(&[0, -1, 1]), 4).unwrap();
            sp.star(black_box(&u), black_box(&v))
        })
    });
    c.bench_function("star/classical N=4 warm", |b| b.iter(|| sp.star(black_box(&u), black_box(&GwaElement::x()))));
}

fn h0(c: &mut Criterion) {
    let p = quantum(&[0, 1]);
    let mut group = c.benchmark_group("h0");
    group.sample_size(10);
    group.bench_function("compare quantum φ=z window 12", |b| b.iter(|| compare_h0(black_box(&p), 12).unwrap()));
    group.finish();
}

criterion_group!(benches, multiply, differential, star, h0);
criterion_main!(benches);

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use isocrit_bench::{cyclic, example_set, set};
use isocrit_core::isoperimetry::{atoms, kappa, kappa_at_most, SearchOptions};

fn bench_kappa(c: &mut Criterion) {
    let mut grp = c.benchmark_group("kappa");
    for &n in &[13usize, 25, 49] {
        let g = cyclic(n);
        let s = set(&g, &[0, 1, 3, 7]);
        for k in 1..=3 {
            grp.bench_with_input(BenchmarkId::new(format!("Z{n} k={k}"), n), &s, |b, s| {
                b.iter(|| kappa(black_box(s), k).unwrap())
            });
        }
    }
    let s = set(&cyclic(49), &[0, 1, 3, 7, 12]);
    grp.bench_function("Z49 bounded k=3", |b| {
        b.iter(|| kappa_at_most(black_box(&s), 3, 5, &SearchOptions::default()).unwrap())
    });
    grp.finish();
}

fn bench_atoms(c: &mut Criterion) {
    let s = set(&cyclic(31), &[0, 1, 4, 9]);
    c.bench_function("atoms Z31 k=2", |b| b.iter(|| atoms(black_box(&s), 2).unwrap()));
    let ex = example_set();
    c.bench_function("sumset example S+S", |b| b.iter(|| black_box(&ex).sumset(&ex).unwrap()));
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(20);
    targets = bench_kappa, bench_atoms
}
criterion_main!(benches);

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use isocrit_bench::{cyclic, interval};
use isocrit_core::make_group;

fn bench_sumset(c: &mut Criterion) {
    let mut grp = c.benchmark_group("sumset");
    for &n in &[64usize, 512, 4096] {
        let g = cyclic(n);
        let a = interval(&g, n / 4);
        let b = interval(&g, n / 8);
        grp.bench_with_input(BenchmarkId::new("interval", n), &(a, b), |bch, (a, b)| {
            bch.iter(|| black_box(a).sumset(black_box(b)).unwrap())
        });
    }
    let g = make_group(&[16, 16]).unwrap();
    let a = interval(&g, 40);
    grp.bench_function("Z16xZ16 stabilizer", |bch| bch.iter(|| black_box(&a).stabilizer().unwrap()));
    grp.finish();
}

criterion_group!(benches, bench_sumset);
criterion_main!(benches);

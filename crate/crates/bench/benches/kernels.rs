use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use dope_core::{
    count_generic_total, enumerate_safe, synthesize, DopePattern,
};

fn bench_enumerate(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate_safe");
    for (m, n) in [(3usize, 3usize), (4, 4), (3, 5)] {
        group.bench_with_input(
            BenchmarkId::from_parameter(format!("m{m}_n{n}")),
            &(m, n),
            |b, &(m, n)| b.iter(|| enumerate_safe(m, n, None).count()),
        );
    }
    group.finish();
}

fn bench_counting(c: &mut Criterion) {
    c.bench_function("count_generic_total_40_40", |b| {
        b.iter(|| count_generic_total(40, 40))
    });
}

fn bench_synthesis(c: &mut Criterion) {
    let diag = DopePattern::from_rows(&[
        &[1, 0, 0, 0, 0],
        &[0, 1, 0, 0, 0],
        &[0, 0, 1, 0, 0],
        &[0, 0, 0, 1, 0],
    ]);
    c.bench_function("synthesize_4x5_diag", |b| {
        b.iter(|| synthesize(&diag, 1, 20).unwrap())
    });
}

criterion_group!(benches, bench_enumerate, bench_counting, bench_synthesis);
criterion_main!(benches);

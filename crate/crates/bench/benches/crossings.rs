use bookdraw::{count_crossings, count_crossings_reference};
use bookdraw_bench::random_drawing;
use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

fn bench_counters(c: &mut Criterion) {
    let mut group = c.benchmark_group("count_crossings");
    for &(n, m, k) in &[(50, 200, 2), (200, 800, 3), (500, 2000, 4)] {
        let d = random_drawing(n, m, k, 7);
        group.bench_function(format!("fast/n{n}_m{m}_k{k}"), |b| {
            b.iter(|| count_crossings(black_box(d.graph()), d.vo(), d.pa()))
        });
        if m <= 800 {
            group.bench_function(format!("reference/n{n}_m{m}_k{k}"), |b| {
                b.iter(|| count_crossings_reference(black_box(d.graph()), d.vo(), d.pa()))
            });
        }
    }
    group.finish();
}

criterion_group!(benches, bench_counters);
criterion_main!(benches);
